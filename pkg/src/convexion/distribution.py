"""Finite distributions over a semiring and the operations of the
distribution monad: unit (delta), pushforward, multiplication (flatten),
and convex combination.

A distribution is a finite, normalized weight map; zero weights are never
stored, so two equal distributions always have identical internal state and
equality is O(support).  Elements are arbitrary hashables (strings in the
JSON interface; tuples and other distributions appear internally for
tensors and nesting).
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Iterable, Sequence

from .errors import NotConvexVector, NotNormalized, SemiringMismatch, UndefinedOnSupport
from .semiring import BOOLEAN, RATIONAL, Semiring


def element_key(el):
    """Total deterministic ordering key over the element kinds we use."""
    if isinstance(el, str):
        return (0, el)
    if isinstance(el, (int, bool)):
        return (1, str(el))
    if isinstance(el, tuple):
        return (2, tuple(element_key(part) for part in el))
    if isinstance(el, FiniteDistribution):
        return (3, tuple((element_key(x), str(w)) for x, w in el.items()))
    return (9, repr(el))


def element_label(el) -> str:
    """Canonical printable name; tuples render as '(a,b)'."""
    if isinstance(el, tuple):
        return "(" + ",".join(element_label(part) for part in el) + ")"
    if isinstance(el, FiniteDistribution):
        inner = ",".join(
            f"{element_label(x)}:{el.semiring.format(w)}" for x, w in el.items()
        )
        return "{" + inner + "}"
    return str(el)


class FiniteDistribution:
    """Finite-support weight map summing to one in its semiring."""

    __slots__ = ("semiring", "_weights", "_hash")

    def __init__(self, weights: Mapping, semiring: Semiring = RATIONAL):
        cleaned = {}
        for el, w in weights.items():
            w = semiring.coerce(w)
            if semiring.is_zero(w):
                continue
            if el in cleaned:
                w = semiring.add(cleaned[el], w)
            cleaned[el] = w
        total = semiring.sum(cleaned.values())
        if not semiring.is_one(total):
            raise NotNormalized(
                f"weights sum to {semiring.format(total)}, expected 1"
            )
        self.semiring = semiring
        self._weights = cleaned
        self._hash = None

    # -- access ---------------------------------------------------------

    def weight(self, el):
        """Weight of el (zero if outside the support)."""
        return self._weights.get(el, self.semiring.zero())

    __call__ = weight

    def support(self):
        return frozenset(self._weights)

    @property
    def support_size(self) -> int:
        return len(self._weights)

    def items(self):
        """Support/weight pairs in canonical order."""
        return sorted(self._weights.items(), key=lambda kv: element_key(kv[0]))

    def as_dict(self) -> dict:
        return dict(self._weights)

    # -- value semantics --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FiniteDistribution):
            return NotImplemented
        return self.semiring is other.semiring and self._weights == other._weights

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.semiring.name, frozenset(self._weights.items()))
            )
        return self._hash

    def __repr__(self):
        body = ", ".join(
            f"{element_label(el)}: {self.semiring.format(w)}"
            for el, w in self.items()
        )
        return "{" + body + "}"


def delta(el, semiring: Semiring = RATIONAL) -> FiniteDistribution:
    """The point distribution concentrated on el."""
    return FiniteDistribution({el: semiring.one()}, semiring)


def _apply(f, el):
    if isinstance(f, Mapping):
        if el not in f:
            raise UndefinedOnSupport(f"map undefined on support element {el!r}")
        return f[el]
    try:
        return f(el)
    except (KeyError, LookupError) as exc:
        raise UndefinedOnSupport(
            f"map undefined on support element {el!r}"
        ) from exc


def pushforward(f, p: FiniteDistribution) -> FiniteDistribution:
    """Image distribution: the weight of y is the sum of p over its fibre."""
    sr = p.semiring
    out: dict = {}
    for el, w in p._weights.items():
        y = _apply(f, el)
        out[y] = sr.add(out[y], w) if y in out else w
    return FiniteDistribution(out, sr)


def flatten(nested: FiniteDistribution) -> FiniteDistribution:
    """Monad multiplication: weight of x is sum over q of P(q) * q(x)."""
    sr = nested.semiring
    out: dict = {}
    for q, outer in nested._weights.items():
        if not isinstance(q, FiniteDistribution):
            raise SemiringMismatch("flatten needs a distribution of distributions")
        if q.semiring is not sr:
            raise SemiringMismatch("inner and outer semirings differ")
        for el, inner in q._weights.items():
            w = sr.mul(outer, inner)
            out[el] = sr.add(out[el], w) if el in out else w
    return FiniteDistribution(out, sr)


def is_convex_vector(alpha: Sequence, semiring: Semiring = RATIONAL) -> bool:
    vals = [semiring.coerce(a) for a in alpha]
    return semiring.is_one(semiring.sum(vals))


def convex_combine(
    alpha: Sequence, ps: Sequence[FiniteDistribution]
) -> FiniteDistribution:
    """Mixture: result(x) = sum_i alpha_i * ps_i(x)."""
    if len(alpha) != len(ps):
        raise NotConvexVector(
            f"{len(alpha)} coefficients for {len(ps)} distributions"
        )
    if not ps:
        raise NotConvexVector("empty combination")
    sr = ps[0].semiring
    for p in ps:
        if p.semiring is not sr:
            raise SemiringMismatch("mixed semirings in convex combination")
    coeffs = [sr.coerce(a) for a in alpha]
    if not sr.is_one(sr.sum(coeffs)):
        raise NotConvexVector("coefficients do not sum to 1")
    out: dict = {}
    for a, p in zip(coeffs, ps):
        if sr.is_zero(a):
            continue
        for el, w in p._weights.items():
            term = sr.mul(a, w)
            out[el] = sr.add(out[el], term) if el in out else term
    return FiniteDistribution(out, sr)


def map_delta(p: FiniteDistribution) -> FiniteDistribution:
    """Functorial image of p under the unit: a distribution of deltas."""
    sr = p.semiring
    return FiniteDistribution(
        {delta(el, sr): w for el, w in p._weights.items()}, sr
    )


def boolean_subset(elements: Iterable) -> FiniteDistribution:
    """Boolean-semiring distributions are exactly nonempty finite subsets."""
    return FiniteDistribution({el: True for el in elements}, BOOLEAN)
