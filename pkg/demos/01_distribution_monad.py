#!/usr/bin/env python3
"""Finite distributions and the three monad operations.

A distribution is a finite weight map summing to one, over exact rationals
or over the Boolean semiring (where it is just a nonempty finite subset).
"""

from fractions import Fraction as F

from convexion import FiniteDistribution, convex_combine, delta, flatten, pushforward
from convexion.distribution import boolean_subset, map_delta

print("== point masses and pushforwards ==")
p = FiniteDistribution({"rain": F(1, 3), "sun": F(2, 3)})
print("p               =", p)
print("delta('rain')   =", delta("rain"))

swap = {"rain": "sun", "sun": "rain"}
print("swap weather    =", pushforward(swap, p))
print("collapse to one =", pushforward(lambda _: "weather", p))

print()
print("== the monad multiplication flattens nested distributions ==")
fair = FiniteDistribution({"h": F(1, 2), "t": F(1, 2)})
heads = delta("h")
nested = FiniteDistribution({fair: F(1, 2), heads: F(1, 2)})
print("half a fair coin, half a two-headed coin:")
print("  flattened =", flatten(nested))

print()
print("== unit laws, concretely ==")
print("flatten(delta(p))     == p :", flatten(delta(p)) == p)
print("flatten(map_delta(p)) == p :", flatten(map_delta(p)) == p)

print()
print("== convex combinations ==")
mix = convex_combine([F(1, 3), F(2, 3)], [fair, delta("t")])
print("(1/3) fair + (2/3) tails =", mix)

print()
print("== the Boolean semiring: distributions are nonempty subsets ==")
s1 = boolean_subset(["a", "b"])
s2 = boolean_subset(["b", "c"])
union = flatten(FiniteDistribution({s1: True, s2: True}, s1.semiring))
print("{a,b} 'mixed with' {b,c} =", union, " (flatten is union)")
