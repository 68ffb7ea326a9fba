"""Exact rational linear algebra: phase-1 simplex feasibility for systems
A x = b, x >= 0, and reduced row echelon / nullspace computations.

Everything runs over fractions.Fraction; no floating point.  Sizes here
are desk scale (tens of rows/columns), so dense tableaus are fine.
Bland's rule guarantees termination.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def solve_eq_nonneg(rows, rhs):
    """Find x >= 0 with A x = b exactly; return a list of Fractions or None.

    rows: list of coefficient lists (each of equal length), rhs: list.
    Phase-1 simplex; Dantzig pricing for speed, falling back to Bland's
    rule after a degenerate stall so termination stays guaranteed.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(v) for v in row] for row in rows]
    b = [Fraction(v) for v in rhs]
    for i in range(m):
        # scale to integers (keeps early pivots integral) and make b >= 0
        scale = ONE
        for v in a[i] + [b[i]]:
            if v.denominator != 1:
                scale = scale * v.denominator // _gcd(scale, v.denominator)
        if b[i] < 0:
            scale = -scale
        if scale != 1:
            a[i] = [v * scale for v in a[i]]
            b[i] = b[i] * scale

    # Tableau columns: n structural vars, m artificials, then rhs.
    width = n + m
    tab = [a[i] + [ONE if j == i else ZERO for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]

    # Phase-1 objective: minimize the sum of artificials.  Reduced cost row
    # starts as -(column sums of the structural part); cost[width] tracks
    # the negated objective value.
    cost = [ZERO] * (width + 1)
    for i in range(m):
        for j in range(n):
            cost[j] -= tab[i][j]
        cost[width] -= tab[i][width]

    bland = False
    stall = 0
    last_objective = cost[width]
    while True:
        if cost[width] == 0:
            break  # all artificials at zero: feasible
        enter = -1
        if bland:
            for j in range(width):
                if cost[j] < 0:
                    enter = j
                    break
        else:
            most_negative = ZERO
            for j in range(width):
                if cost[j] < most_negative:
                    most_negative = cost[j]
                    enter = j
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][width] / coef
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            # Unbounded phase-1 cannot happen (objective bounded below by 0),
            # but guard against malformed input.
            return None
        _pivot(tab, cost, basis, leave, enter, width)
        if cost[width] == last_objective:
            stall += 1
            if stall > 24:
                bland = True  # anti-cycling from here on
        else:
            stall = 0
            last_objective = cost[width]

    if cost[width] != 0:
        return None

    x = [ZERO] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tab[i][width]
    # Artificials stuck in the basis sit at value 0; x already solves A x = b.
    return x


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _pivot(tab, cost, basis, row, col, width):
    piv = tab[row][col]
    inv = 1 / piv
    tab[row] = [v * inv for v in tab[row]]
    for i in range(len(tab)):
        if i != row and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [v - f * w for v, w in zip(tab[i], tab[row])]
    if cost[col] != 0:
        f = cost[col]
        for j in range(width + 1):
            cost[j] -= f * tab[row][j]
    basis[row] = col


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    mat = [list(map(Fraction, row)) for row in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows, ncols):
    """Basis of {v : A v = 0} for the row matrix A with ncols columns."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(v)
    return basis


def in_row_space(rows, v):
    """Whether v lies in the span of the given rows."""
    reduced, pivots = rref(rows, len(v))
    residue = list(map(Fraction, v))
    for r, pc in enumerate(pivots):
        if residue[pc] != 0:
            f = residue[pc]
            residue = [x - f * y for x, y in zip(residue, reduced[r])]
    return all(x == 0 for x in residue)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), ZERO)
