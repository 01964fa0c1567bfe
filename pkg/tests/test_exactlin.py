"""Exact linear algebra: normal forms, solving, and strict feasibility."""

import random
from fractions import Fraction

import pytest

from oracles import (
    brute_force_integral_solutions,
    feasible_by_vertex_enumeration,
    gcd_of_minors,
)
from toricfan.exactlin import (
    FGAbelianGroup,
    StrictSystem,
    determinant,
    dot,
    hermite_normal_form,
    identity_matrix,
    is_unimodular,
    mat_mul,
    mat_vec,
    primitive,
    smith_normal_form,
    solve_linear,
    strict_feasible,
)


def hnf_shape_ok(h) -> bool:
    """Column echelon: pivots positive on strictly increasing rows, entries
    right of a pivot zero, entries left of a pivot reduced mod the pivot."""
    rows = len(h)
    cols = len(h[0]) if rows else 0
    pivots = []
    for j in range(cols):
        rows_nonzero = [i for i in range(rows) if h[i][j] != 0]
        if not rows_nonzero:
            if any(any(h[i][jj] != 0 for i in range(rows)) for jj in range(j + 1, cols)):
                return False  # zero column before a nonzero one
            break
        pivots.append((rows_nonzero[0], j))
    prev_row = -1
    for r, j in pivots:
        if r <= prev_row:
            return False
        prev_row = r
        p = h[r][j]
        if p <= 0:
            return False
        if any(h[r][jj] != 0 for jj in range(j + 1, cols)):
            return False
        if any(not 0 <= h[r][jj] < p for jj in range(j)):
            return False
    return True


class TestHermite:
    def test_identity(self):
        h, u = hermite_normal_form(identity_matrix(3))
        assert h == identity_matrix(3)
        assert u == identity_matrix(3)

    def test_zero(self):
        z = ((0, 0), (0, 0))
        h, u = hermite_normal_form(z)
        assert h == z
        assert u == identity_matrix(2)

    def test_det_invariance(self):
        m = ((2, 4), (1, 3))
        h, u = hermite_normal_form(m)
        assert abs(determinant(h)) == 2
        assert is_unimodular(u)
        assert mat_mul(m, u) == h
        assert hnf_shape_ok(h)

    def test_random_shapes(self):
        rng = random.Random(11)
        for _ in range(150):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            m = tuple(tuple(rng.randint(-9, 9) for _ in range(cols)) for _ in range(rows))
            h, u = hermite_normal_form(m)
            assert is_unimodular(u)
            assert mat_mul(m, u) == h
            assert hnf_shape_ok(h)


class TestSmith:
    def test_identity(self):
        s, u, v = smith_normal_form(identity_matrix(2))
        assert s == identity_matrix(2)

    def test_forced_gcd(self):
        s, u, v = smith_normal_form(((2, 0), (0, 3)))
        assert s == ((1, 0), (0, 6))
        assert mat_mul(mat_mul(u, ((2, 0), (0, 3))), v) == s

    def test_diag_2_2(self):
        s, _, _ = smith_normal_form(((2, 0), (0, 2)))
        assert s == ((2, 0), (0, 2))

    def test_random_decomposition(self):
        rng = random.Random(23)
        for _ in range(120):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            m = tuple(tuple(rng.randint(-6, 6) for _ in range(cols)) for _ in range(rows))
            s, u, v = smith_normal_form(m)
            assert mat_mul(mat_mul(u, m), v) == s
            assert is_unimodular(u) and is_unimodular(v)
            diag = [s[i][i] for i in range(min(rows, cols))]
            for i in range(len(s)):
                for j in range(len(s[0])):
                    if i != j:
                        assert s[i][j] == 0
            nonzero = [d for d in diag if d]
            assert all(d > 0 for d in nonzero)
            for a, b in zip(nonzero, nonzero[1:]):
                assert b % a == 0

    def test_minors_oracle_small(self):
        rng = random.Random(31)
        for _ in range(30):
            m = tuple(tuple(rng.randint(-5, 5) for _ in range(4)) for _ in range(4))
            s, _, _ = smith_normal_form(m)
            diag = [s[i][i] for i in range(4)]
            prod = 1
            for k in range(1, 5):
                prod *= diag[k - 1]
                assert abs(prod) == gcd_of_minors(m, k)


class TestPrimitive:
    def test_examples(self):
        assert primitive((2, -4, 6)) == (1, -2, 3)
        assert primitive((0, 0, 1)) == (0, 0, 1)

    def test_zero_rejected(self):
        with pytest.raises(ValueError, match="no primitive representative"):
            primitive((0, 0, 0))

    def test_idempotent_and_direction_preserving(self):
        rng = random.Random(5)
        for _ in range(200):
            v = tuple(rng.randint(-20, 20) for _ in range(rng.randint(1, 4)))
            if all(x == 0 for x in v):
                continue
            p = primitive(v)
            assert primitive(p) == p
            g = next(x // px for x, px in zip(v, p) if px != 0)
            assert g > 0
            assert tuple(g * x for x in p) == v


class TestSolveLinear:
    def test_identity_system(self):
        sol = solve_linear(identity_matrix(2), (1, 2))
        assert sol.particular == (1, 2)
        assert sol.kernel == ()

    def test_kernel_line(self):
        sol = solve_linear([[1, 1]], [0])
        assert sol.particular == (0, 0)
        assert len(sol.kernel) == 1
        assert dot(sol.kernel[0], (1, 1)) == 0

    def test_no_integer_solution(self):
        assert solve_linear([[2]], [3], mode="integral") is None

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            solve_linear([[1, 0]], [1, 2])

    def test_integral_planted_solutions(self):
        rng = random.Random(47)
        for _ in range(60):
            rows = rng.randint(1, 3)
            cols = rng.randint(1, 3)
            a = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
            x0 = [rng.randint(-10, 10) for _ in range(cols)]
            b = mat_vec(a, x0)
            sol = solve_linear(a, b, mode="integral")
            assert sol is not None
            assert mat_vec(a, sol.particular) == tuple(b)
            for k in sol.kernel:
                assert all(v == 0 for v in mat_vec(a, k))

    def test_integral_brute_force_agreement_small(self):
        rng = random.Random(53)
        for _ in range(40):
            rows = rng.randint(1, 3)
            cols = rng.randint(1, 3)
            a = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
            b = [rng.randint(-6, 6) for _ in range(rows)]
            sol = solve_linear(a, b, mode="integral")
            brute = brute_force_integral_solutions(a, b)
            if brute:
                assert sol is not None
            if sol is not None:
                assert mat_vec(a, sol.particular) == tuple(b)
            else:
                assert not brute


class TestStrictFeasible:
    def test_single_variable(self):
        res = strict_feasible(StrictSystem((), ((1,),), 1))
        assert res.feasible and res.witness[0] > 0

    def test_contradiction(self):
        res = strict_feasible(StrictSystem((), ((1,), (-1,)), 1))
        assert not res.feasible

    def test_p2_convexity_system(self):
        # Characters of the three maximal cones of the plane fan, 2 unknowns
        # each: agreement on shared rays, strict convexity across cones.
        rays = [(1, 0), (0, 1), (-1, -1)]
        cones = [(0, 1), (0, 2), (1, 2)]
        def block(ci, vec, sign=1):
            row = [0] * 6
            row[2 * ci:2 * ci + 2] = [sign * x for x in vec]
            return row
        equalities = []
        stricts = []
        for k, ray in enumerate(rays):
            containing = [ci for ci, mc in enumerate(cones) if k in mc]
            first = containing[0]
            for other in containing[1:]:
                equalities.append([a + b for a, b in zip(block(first, ray), block(other, ray, -1))])
        for ci, mc in enumerate(cones):
            for k, ray in enumerate(rays):
                if k in mc:
                    continue
                tau = next(c for c, m in enumerate(cones) if k in m)
                stricts.append([a + b for a, b in zip(block(ci, ray), block(tau, ray, -1))])
        system = StrictSystem(tuple(tuple(r) for r in equalities), tuple(tuple(r) for r in stricts), 6)

        # Independent witness: the standard degree-one characters, checked by
        # plain substitution before the solver is consulted.
        hand = (0, 0, 0, 1, 1, 0)
        for row in system.equalities:
            assert dot(row, hand) == 0
        for row in system.strict_inequalities:
            assert dot(row, hand) > 0

        res = strict_feasible(system)
        assert res.feasible
        for row in system.equalities:
            assert dot(row, res.witness) == 0
        for row in system.strict_inequalities:
            assert dot(row, res.witness) > 0

    def test_vertex_enumeration_agreement_small(self):
        rng = random.Random(61)
        for _ in range(60):
            dim = rng.randint(1, 3)
            n_eq = rng.randint(0, 2)
            n_strict = rng.randint(1, 8 - n_eq)
            eqs = tuple(tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(n_eq))
            stricts = tuple(tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(n_strict))
            res = strict_feasible(StrictSystem(eqs, stricts, dim))
            assert res.feasible == feasible_by_vertex_enumeration(dim, eqs, stricts)

    def test_row_length_validation(self):
        with pytest.raises(ValueError):
            StrictSystem(((1, 0),), (), 1)


class TestFGAbelianGroup:
    def test_trivial(self):
        g = FGAbelianGroup(0)
        assert g.is_trivial and str(g) == "0"

    def test_divisibility_enforced(self):
        with pytest.raises(ValueError):
            FGAbelianGroup(0, (4, 6))
        with pytest.raises(ValueError):
            FGAbelianGroup(0, (1,))
        g = FGAbelianGroup(2, (2, 6))
        assert not g.is_trivial
        assert str(g) == "Z^2 + Z/2 + Z/6"
