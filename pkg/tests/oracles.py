"""Independent oracles used to cross-check the library.

Everything here is deliberately self-contained: its own determinant, its own
Cramer solve, plain enumeration.  Nothing imports the solver paths under
test, so agreement between an oracle and the library is meaningful.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd


def det_cofactor(m) -> int:
    """Recursive cofactor determinant over the integers."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


def cramer_solve(rows, rhs):
    """Unique rational solution of a square integer system, or None if singular."""
    d = det_cofactor(rows)
    if d == 0:
        return None
    n = len(rows)
    out = []
    for j in range(n):
        col = [[rows[i][k] if k != j else rhs[i] for k in range(n)] for i in range(n)]
        out.append(Fraction(det_cofactor(col), d))
    return tuple(out)


def feasible_by_vertex_enumeration(dim, equalities, strict_rows) -> bool:
    """Feasibility of {eq = 0, strict > 0} by basic-solution enumeration.

    Uses the slack form strict >= 1 (equivalent by homogeneity) inside a box
    whose size dominates every Cramer-rule basic solution of the system, so
    the boxed polytope is nonempty iff the original one is; a nonempty
    polytope inside a box has a vertex, and every vertex is the unique
    solution of some dim-subset of constraint rows.
    """
    rows = []
    rhs = []
    for e in equalities:
        rows.append(tuple(e))
        rhs.append(0)
        rows.append(tuple(-x for x in e))
        rhs.append(0)
    for s in strict_rows:
        rows.append(tuple(s))
        rhs.append(1)
    bound = 1
    for row in rows:
        for x in row:
            bound = max(bound, abs(x))
    box = dim ** max(dim, 1) * bound ** dim + 1
    for i in range(dim):
        unit = tuple(1 if k == i else 0 for k in range(dim))
        rows.append(unit)
        rhs.append(-box)
        rows.append(tuple(-x for x in unit))
        rhs.append(-box)

    def satisfied(point) -> bool:
        for e in equalities:
            if sum(a * p for a, p in zip(e, point)) != 0:
                return False
        for s in strict_rows:
            if sum(a * p for a, p in zip(s, point)) < 1:
                return False
        return all(-box <= p <= box for p in point)

    for subset in combinations(range(len(rows)), dim):
        candidate = cramer_solve([rows[i] for i in subset], [rhs[i] for i in subset])
        if candidate is not None and satisfied(candidate):
            return True
    return False


def brute_force_integral_solutions(rows, rhs, box=10):
    """All integer solutions of rows @ x = rhs with coordinates in [-box, box]."""
    cols = len(rows[0])
    out = []
    for point in product(range(-box, box + 1), repeat=cols):
        if all(sum(a * p for a, p in zip(row, point)) == b for row, b in zip(rows, rhs)):
            out.append(point)
    return out


def gcd_of_minors(m, k) -> int:
    """gcd of all k x k minors (0 when every such minor vanishes)."""
    rows = len(m)
    cols = len(m[0])
    g = 0
    for ri in combinations(range(rows), k):
        for ci in combinations(range(cols), k):
            minor = [[m[i][j] for j in ci] for i in ri]
            g = gcd(g, abs(det_cofactor(minor)))
    return g


def count_triangle_interior(t: int) -> int:
    """Interior lattice points of t * (unit triangle), by direct scan."""
    count = 0
    for x in range(1, t):
        for y in range(1, t - x):
            if x + y < t:
                count += 1
    return count
