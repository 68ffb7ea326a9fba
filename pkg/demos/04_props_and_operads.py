#!/usr/bin/env python3
"""Matrices as abstract operations: the matrix PROP, its convex sub-PROP,
the quasiconvexity operad, and matrix actions on convex sets and vectors.
"""

from fractions import Fraction as F

from convexion import Presentation
from convexion.distribution import FiniteDistribution, delta
from convexion.matprop import (
    QConvOp,
    RMatrix,
    algebra_apply,
    compose,
    convex_matrices,
    direct_sum,
    is_convex_matrix,
    linear_apply,
    permute,
    qconv_compose,
)

print("== convex matrices: every row sums to one ==")
m = RMatrix([[F(1, 2), F(1, 2)], [F(0), F(1)]])
print("m =", m, "| convex:", is_convex_matrix(m))
print("row-deficient:", is_convex_matrix(RMatrix([[F(1, 2), F(1, 3)]])))

print()
print("== PROP structure: vertical, horizontal, symmetries ==")
n = RMatrix([[F(1, 3), F(2, 3)], [F(1), F(0)]])
print("m . n        =", compose(m, n))
print("m (+) n      =", direct_sum(m, n))
print("rows swapped =", permute((1, 0), m, (0, 1)))

print()
print("== the one-input operations are forced: the column of ones ==")
for height in (1, 2, 3):
    only = list(convex_matrices(height, 1, 4))
    print(f"Conv(1,{height}) =", only)

print()
print("== the quasiconvexity operad: convex vectors under flattening ==")
z = QConvOp([F(1, 2), F(1, 2)])
xs = [QConvOp([F(1)]), QConvOp([F(1, 3), F(2, 3)])]
print("(1/2,1/2) o ((1),(1/3,2/3)) =", qconv_compose(z, xs))

print()
print("== convex matrices act on presented convex sets row by row ==")
pres = Presentation(
    ["a", "b", "c"],
    [(delta("a"), FiniteDistribution({"b": F(1, 2), "c": F(1, 2)}))],
)
xs = (pres.delta("a"), pres.delta("b"))
out = algebra_apply(pres, m, xs)
print("m . (delta_a, delta_b) =", [e.rep for e in out])
print("the duplicate column C_2 copies its input:",
      algebra_apply(pres, RMatrix.column_of_ones(2), (pres.delta("b"),)))

print()
print("== the same formula on rational vectors is plain linear algebra ==")
shear = RMatrix([[F(1), F(2)], [F(0), F(1)]])
basis = ((F(1), F(0)), (F(0), F(1)))
print("shear on the standard basis:", linear_apply(shear, basis))
