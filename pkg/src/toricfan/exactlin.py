"""Exact integer and rational linear algebra.

Everything here runs on Python's arbitrary-precision integers and
``fractions.Fraction``.  No floating point is used anywhere in the package:
all downstream geometry (cones, fans, divisors) reduces to exact lattice
computations built on the primitives in this module.

Conventions:

* Vectors are tuples; matrices are tuples of row tuples.
* Hermite normal form is column-style: ``H = M @ U`` with ``U`` unimodular,
  ``H`` lower-triangular echelon, pivots positive, entries right of a pivot
  zero, and entries left of a pivot in its row reduced into ``[0, pivot)``.
* Smith normal form is ``S = U @ M @ V`` with both transforms unimodular and
  the diagonal entries forming a divisibility chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Optional, Sequence

from .errors import InvariantError

LatticeVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]
IntegerMatrix = tuple[LatticeVector, ...]

# Fourier-Motzkin safety valve; the instances this package targets stay far
# below this.
_FM_ROW_LIMIT = 200_000


def dot(a: Sequence, b: Sequence):
    """Exact inner product; lengths must agree."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def identity_matrix(k: int) -> IntegerMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def primitive(v: Sequence[int]) -> LatticeVector:
    """Divide an integer vector by the gcd of its entries.

    The result generates the same ray; raises on the zero vector, which has
    no primitive representative.
    """
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def primitive_direction(v: Sequence) -> LatticeVector:
    """Clear denominators of a rational vector and reduce to a primitive one."""
    fracs = [Fraction(x) for x in v]
    den = 1
    for x in fracs:
        den = lcm(den, x.denominator)
    return primitive([int(x * den) for x in fracs])


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return abs(determinant(m)) == 1


def cross_kernel(rows: Sequence[Sequence[int]]) -> LatticeVector:
    """Generalized cross product of n-1 integer vectors of length n.

    Returns an integer vector orthogonal to every row; it is zero exactly
    when the rows have rank below n-1, and spans their kernel otherwise.
    """
    n = len(rows) + 1
    out = []
    for j in range(n):
        minor = [[row[k] for k in range(n) if k != j] for row in rows]
        out.append((-1) ** j * determinant(minor))
    return tuple(out)


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals, computed exactly.

    Integer input takes a fraction-free elimination path; rational rows are
    scaled to integers first (row scaling preserves rank).
    """
    if not rows:
        return 0
    work = []
    for row in rows:
        if all(type(x) is int for x in row):
            work.append(list(row))
        else:
            fr = [Fraction(x) for x in row]
            den = 1
            for x in fr:
                den = lcm(den, x.denominator)
            work.append([int(x * den) for x in fr])
    rows_n = len(work)
    cols = len(work[0])
    rank = 0
    for col in range(cols):
        pivot = next((i for i in range(rank, rows_n) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pr = work[rank]
        p = pr[col]
        for i in range(rank + 1, rows_n):
            q = work[i][col]
            if q:
                wi = work[i]
                work[i] = [x * p - y * q for x, y in zip(wi, pr)]
        rank += 1
        if rank == rows_n:
            break
    return rank


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    pivots: list[int] = []
    r = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rational_kernel(rows: Sequence[Sequence], width: Optional[int] = None) -> tuple[RationalVector, ...]:
    """Basis of the rational kernel {x : rows @ x = 0}.

    ``width`` must be supplied when ``rows`` is empty (the kernel is then the
    whole space).
    """
    if not rows:
        if width is None:
            raise ValueError("kernel of an empty system needs an explicit width")
        return tuple(tuple(Fraction(1 if i == j else 0) for j in range(width)) for i in range(width))
    cols = len(rows[0])
    work = [[Fraction(x) for x in row] for row in rows]
    work, pivots = _rref(work)
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * cols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -work[r][f]
        basis.append(tuple(vec))
    return tuple(basis)


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``H = M @ U``, ``U`` unimodular, and ``H`` in
    lower-triangular column echelon form: pivots positive, entries to the
    right of each pivot zero, entries left of a pivot in its row reduced
    modulo the pivot.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(row) != cols for row in m):
        raise ValueError("ragged matrix")
    # Work column-major: every operation is a column operation.
    h = [[m[i][j] for i in range(rows)] for j in range(cols)]
    u = [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]

    def axpy(dst: int, src: int, q: int) -> None:
        if q == 0:
            return
        hd, hs = h[dst], h[src]
        for i in range(rows):
            hd[i] -= q * hs[i]
        ud, us = u[dst], u[src]
        for i in range(cols):
            ud[i] -= q * us[i]

    pivot_col = 0
    for i in range(rows):
        if pivot_col >= cols:
            break
        while True:
            nonzero = [j for j in range(pivot_col, cols) if h[j][i] != 0]
            if not nonzero:
                break
            j0 = min(nonzero, key=lambda j: (abs(h[j][i]), j))
            if j0 != pivot_col:
                h[pivot_col], h[j0] = h[j0], h[pivot_col]
                u[pivot_col], u[j0] = u[j0], u[pivot_col]
            if len(nonzero) == 1 and h[pivot_col][i] != 0:
                break
            for j in range(pivot_col + 1, cols):
                if h[j][i] != 0:
                    axpy(j, pivot_col, h[j][i] // h[pivot_col][i])
        if h[pivot_col][i] == 0:
            continue  # no pivot in this row
        if h[pivot_col][i] < 0:
            h[pivot_col] = [-x for x in h[pivot_col]]
            u[pivot_col] = [-x for x in u[pivot_col]]
        p = h[pivot_col][i]
        for j in range(pivot_col):
            axpy(j, pivot_col, h[j][i] // p)
        pivot_col += 1

    hm = tuple(tuple(h[j][i] for j in range(cols)) for i in range(rows))
    um = tuple(tuple(u[j][i] for j in range(cols)) for i in range(cols))
    return hm, um


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Smith normal form ``S = U @ M @ V`` with a divisibility chain on the diagonal."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(row) for row in m]
    u = [list(row) for row in identity_matrix(rows)]
    v = [list(row) for row in identity_matrix(cols)]

    def row_axpy(dst, src, q):
        if q:
            a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def col_axpy(dst, src, q):
        if q:
            for r in a:
                r[dst] -= q * r[src]
            for r in v:
                r[dst] -= q * r[src]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(rows, cols):
        # Move a minimal nonzero entry of the trailing block to the pivot.
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j] != 0]
        if not entries:
            break
        _, pi, pj = min(entries)
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            col_swap(t, pj)
        while True:
            # Clear the pivot column, then the pivot row, restarting whenever
            # a remainder becomes the new (smaller) pivot.
            restart = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    row_axpy(i, t, a[i][t] // a[t][t])
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        u[t], u[i] = u[i], u[t]
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    col_axpy(j, t, a[t][j] // a[t][t])
                    if a[t][j] != 0:
                        col_swap(t, j)
                        restart = True
                        break
            if restart:
                continue
            # Divisibility: the pivot must divide every remaining entry.
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_axpy(t, offender, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    s = tuple(tuple(row) for row in a)
    return s, tuple(tuple(r) for r in u), tuple(tuple(r) for r in v)


@dataclass(frozen=True)
class LinearSolution:
    """A particular solution together with a kernel basis."""

    particular: tuple
    kernel: tuple


def solve_linear(a: Sequence[Sequence], b: Sequence, mode: str = "rational") -> Optional[LinearSolution]:
    """Solve ``a @ x = b`` exactly.

    In ``rational`` mode returns a particular rational solution and a basis of
    the rational kernel, or ``None`` when inconsistent.  In ``integral`` mode
    returns an integer particular solution and a basis of the full integer
    kernel lattice (decided via Hermite form), or ``None`` when no integer
    solution exists.
    """
    if mode not in ("rational", "integral"):
        raise ValueError(f"unknown mode {mode!r}")
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} rows vs {len(b)} right-hand sides")
    if not a:
        raise ValueError("empty system has unknown width")
    cols = len(a[0])
    if any(len(row) != cols for row in a):
        raise ValueError("ragged matrix")

    if mode == "rational":
        work = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
        work, pivots = _rref(work)
        if cols in pivots:
            return None  # a pivot in the augmented column: inconsistent
        particular = [Fraction(0)] * cols
        for r, p in enumerate(pivots):
            particular[p] = work[r][cols]
        kernel = rational_kernel(a, cols)
        return LinearSolution(tuple(particular), kernel)

    # Integral mode: clear denominators row by row, then pass to Hermite form.
    int_rows: list[list[int]] = []
    int_rhs: list[int] = []
    for row, rhs in zip(a, b):
        fr = [Fraction(x) for x in row] + [Fraction(rhs)]
        den = 1
        for x in fr:
            den = lcm(den, x.denominator)
        scaled = [int(x * den) for x in fr]
        int_rows.append(scaled[:cols])
        int_rhs.append(scaled[cols])

    h, u = hermite_normal_form(int_rows)
    # With H = A @ U, the system A x = b becomes H y = b, x = U y.  The
    # echelon shape of H lets each row either determine one new coordinate of
    # y or act as a pure consistency check.
    y: list[Optional[int]] = [None] * cols
    for i in range(len(int_rows)):
        undetermined = [j for j in range(cols) if h[i][j] != 0 and y[j] is None]
        known = sum(h[i][j] * y[j] for j in range(cols) if h[i][j] != 0 and y[j] is not None)
        if len(undetermined) > 1:
            raise InvariantError("hermite form is not echelon")
        if len(undetermined) == 1:
            j = undetermined[0]
            num = int_rhs[i] - known
            if num % h[i][j] != 0:
                return None
            y[j] = num // h[i][j]
        elif known != int_rhs[i]:
            return None
    yfull = [0 if val is None else val for val in y]
    particular = tuple(sum(u[i][j] * yfull[j] for j in range(cols)) for i in range(cols))
    zero_cols = [j for j in range(cols) if all(h[i][j] == 0 for i in range(len(int_rows)))]
    kernel = tuple(tuple(u[i][j] for i in range(cols)) for j in zero_cols)
    return LinearSolution(particular, kernel)


def integral_kernel(a: Sequence[Sequence[int]]) -> tuple[LatticeVector, ...]:
    """Basis of the integer solution lattice of ``a @ x = 0``."""
    sol = solve_linear(a, [0] * len(a), mode="integral")
    if sol is None:
        raise InvariantError("homogeneous system reported unsolvable")
    return sol.kernel


# ---------------------------------------------------------------------------
# Exact feasibility via Fourier-Motzkin elimination


@dataclass(frozen=True)
class StrictSystem:
    """A homogeneous system: equality rows ``= 0`` and strict rows ``> 0``."""

    equalities: tuple
    strict_inequalities: tuple
    dim: int

    def __post_init__(self):
        for row in list(self.equalities) + list(self.strict_inequalities):
            if len(row) != self.dim:
                raise ValueError(f"row of length {len(row)} in a system of dimension {self.dim}")


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[RationalVector]

    def __bool__(self) -> bool:
        return self.feasible


def _normalize_rows(raw: list[tuple[tuple[Fraction, ...], Fraction]]) -> Optional[list]:
    """Canonicalize, deduplicate, and screen rows ``coeffs . x >= rhs``.

    Returns ``None`` when a row is an outright contradiction (all-zero
    coefficients with positive right-hand side).
    """
    out = {}
    for coeffs, rhs in raw:
        if all(c == 0 for c in coeffs):
            if rhs > 0:
                return None
            continue
        if rhs != 0:
            scale = 1 / abs(rhs)
            coeffs = tuple(c * scale for c in coeffs)
            rhs = Fraction(1 if rhs > 0 else -1)
        else:
            den = 1
            for c in coeffs:
                den = lcm(den, c.denominator)
            ints = [int(c * den) for c in coeffs]
            g = 0
            for x in ints:
                g = gcd(g, x)
            coeffs = tuple(Fraction(x // g) for x in ints)
        out[(coeffs, rhs)] = None
    return list(out)


def _fourier_motzkin(num_vars: int, rows: list) -> Optional[list[Fraction]]:
    """Feasibility of ``coeffs . x >= rhs`` rows; returns a witness or None."""
    rows = _normalize_rows([(tuple(Fraction(c) for c in coeffs), Fraction(rhs)) for coeffs, rhs in rows])
    if rows is None:
        return None
    eliminated = []
    while True:
        occupied = [v for v in range(num_vars) if any(r[0][v] != 0 for r in rows)]
        if not occupied:
            break
        # Fewest pairwise products first keeps intermediate systems small.
        def cost(v):
            pos = sum(1 for r in rows if r[0][v] > 0)
            neg = sum(1 for r in rows if r[0][v] < 0)
            return (pos * neg, v)

        v = min(occupied, key=cost)
        pos = [r for r in rows if r[0][v] > 0]
        neg = [r for r in rows if r[0][v] < 0]
        passthrough = [r for r in rows if r[0][v] == 0]
        eliminated.append((v, pos, neg))
        new_rows = list(passthrough)
        for cp, rp in pos:
            for cn, rn in neg:
                alpha, beta = cp[v], cn[v]
                coeffs = tuple(alpha * cn[j] - beta * cp[j] for j in range(num_vars))
                new_rows.append((coeffs, alpha * rn - beta * rp))
        if len(new_rows) > _FM_ROW_LIMIT:
            raise InvariantError("fourier-motzkin row blow-up")
        rows = _normalize_rows(new_rows)
        if rows is None:
            return None

    # Variables can disappear by cancellation without an elimination step;
    # they are free in the final system, so pin them first.  Every variable a
    # stored bound row mentions is then assigned before it is needed.
    witness: list[Optional[Fraction]] = [None] * num_vars
    recorded = {v for v, _, _ in eliminated}
    for v in range(num_vars):
        if v not in recorded:
            witness[v] = Fraction(0)
    for v, pos, neg in reversed(eliminated):
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for coeffs, rhs in pos:
            rest = sum(coeffs[j] * witness[j] for j in range(num_vars) if j != v and coeffs[j] != 0)
            bound = (rhs - rest) / coeffs[v]
            lo = bound if lo is None or bound > lo else lo
        for coeffs, rhs in neg:
            rest = sum(coeffs[j] * witness[j] for j in range(num_vars) if j != v and coeffs[j] != 0)
            bound = (rhs - rest) / coeffs[v]
            hi = bound if hi is None or bound < hi else hi
        if lo is not None and hi is not None:
            if lo > hi:
                raise InvariantError("fourier-motzkin back-substitution out of bounds")
            witness[v] = lo
        elif lo is not None:
            witness[v] = lo if lo > 0 else Fraction(0)
        elif hi is not None:
            witness[v] = hi if hi < 0 else Fraction(0)
        else:
            witness[v] = Fraction(0)
    return [Fraction(0) if w is None else w for w in witness]


def feasible_point(
    dim: int,
    equalities: Sequence[Sequence],
    eq_rhs: Sequence,
    inequalities: Sequence[Sequence],
    ineq_rhs: Sequence,
) -> Optional[RationalVector]:
    """Find ``x`` with ``equalities @ x = eq_rhs`` and ``inequalities @ x >= ineq_rhs``.

    Equalities are eliminated by an exact rational solve; the remaining
    inequality system is decided by Fourier-Motzkin elimination.  Any witness
    is re-verified against every constraint before it is returned.
    """
    if len(equalities) != len(eq_rhs) or len(inequalities) != len(ineq_rhs):
        raise ValueError("constraint rows and right-hand sides differ in length")
    for row in list(equalities) + list(inequalities):
        if len(row) != dim:
            raise ValueError(f"row of length {len(row)} in a system of dimension {dim}")

    if equalities:
        sol = solve_linear(equalities, eq_rhs, mode="rational")
        if sol is None:
            return None
        x0, kernel = sol.particular, sol.kernel
    else:
        x0 = tuple(Fraction(0) for _ in range(dim))
        kernel = tuple(tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim))

    if not kernel:
        ok = all(dot(row, x0) >= rhs for row, rhs in zip(inequalities, ineq_rhs))
        return tuple(Fraction(x) for x in x0) if ok else None

    reduced = []
    for row, rhs in zip(inequalities, ineq_rhs):
        coeffs = tuple(Fraction(dot(row, k)) for k in kernel)
        reduced.append((coeffs, Fraction(rhs) - Fraction(dot(row, x0))))
    t = _fourier_motzkin(len(kernel), reduced)
    if t is None:
        return None
    x = [Fraction(xi) for xi in x0]
    for coeff, k in zip(t, kernel):
        if coeff:
            x = [xi + coeff * ki for xi, ki in zip(x, k)]
    witness = tuple(x)
    for row, rhs in zip(equalities, eq_rhs):
        if dot(row, witness) != rhs:
            raise InvariantError("feasibility witness violates an equality")
    for row, rhs in zip(inequalities, ineq_rhs):
        if dot(row, witness) < rhs:
            raise InvariantError("feasibility witness violates an inequality")
    return witness


def strict_feasible(system: StrictSystem) -> FeasibilityResult:
    """Decide ``equalities = 0`` and ``strict rows > 0`` exactly.

    The system is homogeneous, so each strict row ``r . x > 0`` may be
    replaced by ``r . x >= 1``: any strictly feasible point scales into the
    slack form, and the slack form is trivially strictly feasible.
    """
    witness = feasible_point(
        system.dim,
        system.equalities,
        [0] * len(system.equalities),
        system.strict_inequalities,
        [1] * len(system.strict_inequalities),
    )
    if witness is None:
        return FeasibilityResult(False, None)
    for row in system.strict_inequalities:
        if dot(row, witness) <= 0:
            raise InvariantError("strict witness is not strict")
    return FeasibilityResult(True, witness)


# ---------------------------------------------------------------------------
# Finitely generated abelian groups (for divisor class computations)


@dataclass(frozen=True)
class FGAbelianGroup:
    """Rank plus invariant factors ``d_1 | d_2 | ...`` (all >= 2)."""

    rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        factors = tuple(self.invariant_factors)
        for d in factors:
            if d < 2:
                raise ValueError("invariant factors must be at least 2")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append(f"Z^{self.rank}" if self.rank > 1 else "Z")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


def cokernel_group(m: Sequence[Sequence[int]], target_rank: int) -> FGAbelianGroup:
    """The group ``Z^target_rank / column-lattice(m)`` via Smith normal form."""
    if not m or not m[0]:
        return FGAbelianGroup(target_rank)
    s, _, _ = smith_normal_form(m)
    diag = [s[i][i] for i in range(min(len(s), len(s[0])))]
    nonzero = [d for d in diag if d != 0]
    return FGAbelianGroup(target_rank - len(nonzero), tuple(d for d in nonzero if d >= 2))
