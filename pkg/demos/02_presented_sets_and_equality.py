#!/usr/bin/env python3
"""Finitely presented convex sets and the certificate-producing equality
engine.

A presentation is a finite set of generators plus relation pairs of
distributions; elements are distributions over the generators up to the
convex closure of the relations.  Equality answers Equal with a replayable
zig-zag, Distinct with an affine invariant, or an honest Unknown.
"""

from fractions import Fraction as F

from convexion import Presentation, eq, quotient_mix, verify_verdict
from convexion.distribution import FiniteDistribution, delta
from convexion.presentation import hom_combine, induce_map

print("== a presentation that splits one generator into two ==")
split = Presentation(
    ["a", "b", "c", "d"],
    [(delta("a"), FiniteDistribution({"b": F(1, 2), "c": F(1, 2)}))],
)
print("generators:", split.generators)
print("relation:   a  ~  (b + c)/2")

lhs = split.element(FiniteDistribution({"a": F(1, 2), "d": F(1, 2)}))
rhs = split.element(FiniteDistribution({"b": F(1, 4), "c": F(1, 4), "d": F(1, 2)}))
verdict = eq(lhs, rhs, step_bound=4)
print()
print("eq( (a+d)/2 , (b/4 + c/4 + d/2) ) ->", verdict.status)
step = verdict.path[0]
print("  one-step witness: multipliers", [str(l) for l in step.lambdas])
print("  spectator:", {g: str(t) for g, t in zip(split.generators, step.spectator) if t})
print("  witness replays:", verify_verdict(verdict, lhs, rhs))

print()
print("== a Distinct verdict carries an affine invariant ==")
other = split.element(FiniteDistribution({"b": F(1, 2), "d": F(1, 2)}))
verdict2 = eq(lhs, other, 4)
print("eq( (a+d)/2 , (b+d)/2 ) ->", verdict2.status)
print("  invariant:", {g: str(v) for g, v in zip(split.generators, verdict2.invariant) if v})
print("  (constant across the relation, different on the two inputs)")
print("  witness validates:", verify_verdict(verdict2, lhs, other))

print()
print("== quotient mixing is well-defined on classes ==")
mid = quotient_mix([F(1, 2), F(1, 2)], [split.delta("b"), split.delta("c")])
print("(b + c)/2 equals a in the quotient:", eq(mid, split.delta("a"), 1).status)

print()
print("== induced maps must respect the relations ==")
target = Presentation.free(["x", "y"])
try:
    induce_map(split, target, {
        "a": target.delta("x"), "b": target.delta("x"),
        "c": target.delta("y"), "d": target.delta("y"),
    })
except Exception as exc:
    print("separating b from the (b+c)/2 bundle fails:", type(exc).__name__)

ok = induce_map(split, target, {
    "a": target.element(FiniteDistribution({"x": F(1, 2), "y": F(1, 2)})),
    "b": target.delta("x"), "c": target.delta("y"), "d": target.delta("y"),
})
print("a consistent assignment is accepted; image of delta(a):", ok(split.delta("a")).rep)

print()
print("== mixing maps pointwise ==")
d01 = Presentation.free(["0", "1"])
ident = induce_map(d01, d01, {"0": d01.delta("0"), "1": d01.delta("1")})
swap = induce_map(d01, d01, {"0": d01.delta("1"), "1": d01.delta("0")})
mixed = hom_combine([F(1, 2), F(1, 2)], [ident, swap])
print("(id + swap)/2 at delta(0):", mixed(d01.delta("0")).rep)
