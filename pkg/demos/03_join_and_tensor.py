#!/usr/bin/env python3
"""The join (coproduct) and the convex tensor product, ending with the
composition map that is biconvex but not convex.
"""

from fractions import Fraction as F

from convexion import Presentation, quotient_mix
from convexion.distribution import FiniteDistribution
from convexion.join import JoinSpace, copair, join_mix
from convexion.presentation import induce_map
from convexion.tensor import (
    NConvexMapSpec,
    check_biconvex_not_convex_counterexample,
    coherence,
    extend_multiconvex,
    tensor,
    universal_map,
)

X = Presentation.free(["x0", "x1"])
Y = Presentation.free(["y0", "y1"])
Z = Presentation.free(["z0", "z1"])

print("== the join: line segments between the two factors ==")
space = JoinSpace(X, Y)
px = space.inject_x(X.delta("x0"))
py = space.inject_y(Y.delta("y0"))
mid = join_mix([F(1, 2), F(1, 2)], [px, py])
print("midpoint of an X-point and a Y-point:", mid)

print()
print("== the coproduct property: copair restricts to the injections ==")
f = induce_map(X, Z, {"x0": Z.delta("z0"), "x1": Z.delta("z1")})
g = induce_map(Y, Z, {"y0": Z.delta("z1"), "y1": Z.delta("z1")})
h = copair(f, g)
print("h(i_X(x0)) == f(x0):", h(space.inject_x(X.delta("x0"))) == f(X.delta("x0")))
pt = space.point(F(1, 3), X.delta("x0"), Y.delta("y0"))
print("h([1/3, x0, y0]) =", h(pt).rep, " (the 1/3-2/3 mixture of the images)")

print()
print("== the tensor product represents biconvex maps ==")
tp = tensor([X, Y])
print("generators of X (x) Y:", tp.generators)
ex = X.element(FiniteDistribution({"x0": F(1, 2), "x1": F(1, 2)}))
ey = Y.element(FiniteDistribution({"y0": F(1, 3), "y1": F(2, 3)}))
print("pure tensor of mixtures:", universal_map([X, Y], [ex, ey]).rep)

table = {
    ("x0", "y0"): Z.delta("z0"),
    ("x0", "y1"): Z.delta("z1"),
    ("x1", "y0"): Z.delta("z1"),
    ("x1", "y1"): Z.delta("z0"),
}
xor_map = extend_multiconvex(NConvexMapSpec((X, Y), Z, table))
print("an xor-like table extends to a convex map out of the tensor;")
print("  value at the mixed pure tensor:", xor_map(universal_map([X, Y], [ex, ey])).rep)

print()
print("== coherences are isomorphisms ==")
braid = coherence("braiding", (X, Y))
e = universal_map([X, Y], [ex, ey])
print("braiding twice is the identity:", braid.back(braid.fwd(e)) == e)

print()
print("== composition is biconvex but NOT convex ==")
report = check_biconvex_not_convex_counterexample()
print("biconvex composite at delta_0:   ", report.biconvex_value)
print("convex-hypothesis value:         ", report.convex_hypothesis_value)
print("the two disagree:", report.unequal)
print("note:", report.value_note)
