"""Coefficient semirings with exact arithmetic.

Two semirings are supported: nonnegative rationals (``fractions.Fraction``
payloads, always in lowest terms) and the Boolean semiring (``bool``
payloads, or/and).  Both are semifields: every nonzero value is invertible.
Values are plain payloads; the semiring object supplies the operations, so
containers carry one semiring reference instead of wrapping every scalar.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError, SemiringMismatch


class Semiring:
    name = "abstract"
    semifield = True

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def is_value(self, v) -> bool:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        """Multiplicative inverse of a nonzero value."""
        raise NotImplementedError

    def sum(self, values):
        total = self.zero()
        for v in values:
            total = self.add(total, v)
        return total

    def is_zero(self, v) -> bool:
        return v == self.zero()

    def is_one(self, v) -> bool:
        return v == self.one()

    def coerce(self, v):
        """Accept convenient payload spellings (ints, strings) exactly."""
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def format(self, v) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<semiring {self.name}>"


class RationalSemiring(Semiring):
    """Nonnegative rationals under + and *."""

    name = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def is_value(self, v):
        return isinstance(v, Fraction) and v >= 0

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def inverse(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return 1 / a

    def coerce(self, v):
        if isinstance(v, bool):
            raise SemiringMismatch("boolean payload in a rational context")
        if isinstance(v, Fraction):
            out = v
        elif isinstance(v, int):
            out = Fraction(v)
        elif isinstance(v, str):
            return self.parse(v)
        else:
            raise ParseError(f"cannot coerce {v!r} to a nonnegative rational")
        if out < 0:
            raise ParseError(f"negative coefficient {out} is not allowed")
        return out

    def parse(self, s: str):
        try:
            out = Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {s!r}: {exc}") from None
        if out < 0:
            raise ParseError(f"negative coefficient {s!r} is not allowed")
        return out

    def format(self, v) -> str:
        return str(Fraction(v))


class BooleanSemiring(Semiring):
    """Truth values under or and and; 1 is its own inverse."""

    name = "boolean"

    def zero(self):
        return False

    def one(self):
        return True

    def is_value(self, v):
        return isinstance(v, bool)

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def inverse(self, a):
        if not a:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return True

    def coerce(self, v):
        if isinstance(v, bool):
            return v
        if isinstance(v, int) and v in (0, 1):
            return bool(v)
        if isinstance(v, str):
            return self.parse(v)
        raise ParseError(f"cannot coerce {v!r} to a boolean weight")

    def parse(self, s: str):
        s = s.strip()
        if s == "1":
            return True
        if s == "0":
            return False
        raise ParseError(f"bad boolean literal {s!r} (expected '0' or '1')")

    def format(self, v) -> str:
        return "1" if v else "0"


RATIONAL = RationalSemiring()
BOOLEAN = BooleanSemiring()

_BY_NAME = {"rational": RATIONAL, "boolean": BOOLEAN}


def semiring_by_name(name: str) -> Semiring:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ParseError(f"unknown semiring {name!r}") from None


def require_rational(semiring: Semiring, what: str) -> None:
    """Guard for the rational-only machinery (quotients, joins, tensors)."""
    if semiring is not RATIONAL and semiring.name != "rational":
        raise SemiringMismatch(
            f"{what} is implemented over the rational semiring only "
            f"(got {semiring.name})"
        )
