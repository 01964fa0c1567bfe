"""Toric divisors: Cartier data, class and Picard groups, ampleness,
projectivity, divisor polytopes, and lattice-point degree computations.

A divisor is a plain sequence of integer coefficients, one per fan ray, in
the fan's ray order.  Cartier data assigns to every maximal cone a character
vector that evaluates to minus the coefficient on each of the cone's rays;
the divisor is Cartier when integral characters exist, Q-Cartier when
rational ones do.  All decisions are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, floor, ceil, lcm
from typing import Optional, Sequence

from .cone import Cone
from .errors import InvariantError
from .exactlin import (
    FGAbelianGroup,
    LatticeVector,
    RationalVector,
    cokernel_group,
    dot,
    feasible_point,
    hermite_normal_form,
    integral_kernel,
    matrix_rank,
    solve_linear,
)
from .fan import Fan

ToricDivisor = Sequence[int]


@dataclass(frozen=True)
class CartierData:
    """One character per maximal cone; `mode` records integral vs rational."""

    characters: tuple
    mode: str


@dataclass(frozen=True)
class Polytope:
    """Intersection of halfspaces {m : normal . m >= -offset}, with vertices."""

    inequalities: tuple  # (normal, offset) pairs
    vertices: tuple


@dataclass(frozen=True)
class GrowthReport:
    """Predicted leading term of the top Chern numbers of the induced bundle family."""

    n: int
    degree: int
    statement: str
    note: str = "coefficients below the leading term are not determined"


@dataclass(frozen=True)
class ProjectivityResult:
    feasible: bool
    witness_divisor: Optional[tuple[int, ...]]
    witness_data: Optional[CartierData]

    def __bool__(self) -> bool:
        return self.feasible


def _check_divisor(fan: Fan, divisor: ToricDivisor) -> tuple[int, ...]:
    coeffs = tuple(divisor)
    if len(coeffs) != len(fan.rays):
        raise ValueError(
            f"divisor has {len(coeffs)} coefficients but the fan has {len(fan.rays)} rays"
        )
    return coeffs


def cartier_data(fan: Fan, divisor: ToricDivisor, mode: str = "integral") -> Optional[CartierData]:
    """Per-cone characters m with m(l_k) = -a_k on each cone's rays, or None.

    ``integral`` decides Cartier, ``rational`` decides Q-Cartier.  For
    full-dimensional cones the character is unique when it exists; for
    lower-dimensional cones the free coordinates of the solution are pinned
    to zero.
    """
    if mode not in ("integral", "rational"):
        raise ValueError(f"unknown mode {mode!r}")
    coeffs = _check_divisor(fan, divisor)
    characters = []
    for mc in fan.max_cones:
        rows = [fan.rays[k] for k in mc]
        rhs = [-coeffs[k] for k in mc]
        sol = solve_linear(rows, rhs, mode=mode)
        if sol is None:
            return None
        characters.append(tuple(sol.particular))
    return CartierData(tuple(characters), mode)


def is_q_cartier(fan: Fan, divisor: ToricDivisor) -> bool:
    return cartier_data(fan, divisor, mode="rational") is not None


def _divisors_of(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def cartier_index(fan: Fan, divisor: ToricDivisor) -> Optional[int]:
    """Least c >= 1 with c*D Cartier, or None when D is not even Q-Cartier.

    Any rational solution scaled by the lcm L of its denominators is
    integral, so the set of Cartier multiples is a nonzero ideal containing
    L; the index is its smallest positive element, found among L's divisors.
    """
    coeffs = _check_divisor(fan, divisor)
    data = cartier_data(fan, coeffs, mode="rational")
    if data is None:
        return None
    denominator_lcm = 1
    for character in data.characters:
        for x in character:
            denominator_lcm = lcm(denominator_lcm, Fraction(x).denominator)
    for c in _divisors_of(denominator_lcm):
        scaled = [c * a for a in coeffs]
        if cartier_data(fan, scaled, mode="integral") is not None:
            return c
    raise InvariantError("the denominator lcm itself must give a Cartier multiple")


def class_group(fan: Fan) -> FGAbelianGroup:
    """Cokernel of the character lattice mapping into ray-indexed divisors."""
    if matrix_rank(fan.rays) != fan.ambient_rank:
        raise ValueError("rays do not span the ambient space")
    return cokernel_group(fan.rays, len(fan.rays))


def picard_group(fan: Fan) -> FGAbelianGroup:
    """Cartier divisors modulo principal divisors, computed exactly.

    The integer solution lattice of the combined system
    ``m_sigma(l_k) + a_k = 0`` (over all maximal cones and their rays) is
    projected to the coefficient coordinates, giving the lattice of Cartier
    divisors; the principal sublattice is expressed in a Hermite basis of it
    and the quotient read off a Smith normal form.
    """
    if not fan.is_complete():
        raise ValueError("picard group computation requires a complete fan")
    n = fan.ambient_rank
    s = len(fan.max_cones)
    num_rays = len(fan.rays)
    width = s * n + num_rays
    rows = []
    for ci, mc in enumerate(fan.max_cones):
        for k in mc:
            row = [0] * width
            row[ci * n:(ci + 1) * n] = fan.rays[k]
            row[s * n + k] = 1
            rows.append(row)
    kernel = integral_kernel(rows)
    cartier_gens = [vec[s * n:] for vec in kernel]  # project to coefficients

    # Hermite basis of the Cartier lattice (columns of gen_matrix generate it).
    gen_matrix = [list(row) for row in zip(*cartier_gens)] if cartier_gens else []
    if not gen_matrix:
        raise InvariantError("complete fan admits no Cartier divisors at all")
    h, _ = hermite_normal_form(gen_matrix)
    basis_cols = [j for j in range(len(h[0])) if any(h[i][j] != 0 for i in range(len(h)))]
    basis = [[h[i][j] for j in basis_cols] for i in range(len(h))]  # num_rays x r

    # Principal divisors: the ray-evaluation image of the character lattice.
    coords = []
    for j in range(n):
        principal = [fan.rays[k][j] for k in range(num_rays)]
        sol = solve_linear(basis, principal, mode="integral")
        if sol is None:
            raise InvariantError("principal divisor is not Cartier")
        coords.append(sol.particular)
    relation_matrix = [list(col) for col in zip(*coords)]  # r x n
    return cokernel_group(relation_matrix, len(basis_cols))


def is_ample(fan: Fan, divisor: ToricDivisor) -> bool:
    """Strict convexity of the support function of a Cartier divisor.

    The criterion is m_sigma(l_k) > -a_k for every maximal cone sigma and
    every ray k outside it, compared exactly.
    """
    coeffs = _check_divisor(fan, divisor)
    if not fan.is_complete():
        raise ValueError("ampleness requires a complete fan")
    data = cartier_data(fan, coeffs, mode="integral")
    if data is None:
        raise ValueError("ampleness undefined for non-Cartier input")
    for mc, character in zip(fan.max_cones, data.characters):
        inside = set(mc)
        for k in range(len(fan.rays)):
            if k in inside:
                continue
            if dot(character, fan.rays[k]) <= -coeffs[k]:
                return False
    return True


def is_projective(fan: Fan) -> ProjectivityResult:
    """Search for an ample divisor via strictly convex per-cone characters.

    Unknowns are the characters of all maximal cones.  Agreement equalities
    pin a single value per ray (cones containing the ray are chained to the
    first one, which carries the same solution set as all pairwise
    agreements); strict rows demand each character to exceed that agreed
    value on every outside ray.  On feasibility the rational witness is
    cleared to an integral ample divisor.
    """
    if not fan.is_complete():
        raise ValueError("projectivity test requires a complete fan")
    n = fan.ambient_rank
    s = len(fan.max_cones)
    width = s * n
    containing = [[ci for ci, mc in enumerate(fan.max_cones) if k in mc] for k in range(len(fan.rays))]

    equalities = []
    for k, cones in enumerate(containing):
        first = cones[0]
        for other in cones[1:]:
            row = [0] * width
            row[first * n:(first + 1) * n] = fan.rays[k]
            row[other * n:(other + 1) * n] = [-x for x in fan.rays[k]]
            equalities.append(row)
    stricts = []
    for ci, mc in enumerate(fan.max_cones):
        inside = set(mc)
        for k in range(len(fan.rays)):
            if k in inside:
                continue
            tau = containing[k][0]
            if tau == ci:
                raise InvariantError("outside ray cannot have its agreed cone equal to sigma")
            row = [0] * width
            row[ci * n:(ci + 1) * n] = fan.rays[k]
            row[tau * n:(tau + 1) * n] = [-x for x in fan.rays[k]]
            stricts.append(row)

    system = StrictSystem(
        tuple(tuple(r) for r in equalities),
        tuple(tuple(r) for r in stricts),
        width,
    )
    result = strict_feasible(system)
    if not result.feasible:
        return ProjectivityResult(False, None, None)
    witness = result.witness
    scale = 1
    for x in witness:
        scale = lcm(scale, Fraction(x).denominator)
    integral = [int(x * scale) for x in witness]
    characters = tuple(tuple(integral[ci * n:(ci + 1) * n]) for ci in range(s))
    coeffs = []
    for k, cones in enumerate(containing):
        value = dot(characters[cones[0]], fan.rays[k])
        for other in cones[1:]:
            if dot(characters[other], fan.rays[k]) != value:
                raise InvariantError("projectivity witness disagrees on a shared ray")
        coeffs.append(-value)
    divisor = tuple(coeffs)
    if not is_ample(fan, divisor):
        raise InvariantError("projectivity witness failed the ampleness check")
    return ProjectivityResult(True, divisor, CartierData(characters, "integral"))


def divisor_polytope(fan: Fan, divisor: ToricDivisor) -> Polytope:
    """The polytope {m : l_ray(m) >= -a_ray}, with exact rational vertices."""
    coeffs = _check_divisor(fan, divisor)
    n = fan.ambient_rank
    if matrix_rank(fan.rays) != n:
        raise ValueError("polytope is unbounded: rays do not span")
    # Bounded iff the recession cone {m : all rays nonnegative} is trivial,
    # which for spanning rays means no nonzero functional is nonnegative on
    # all of them.
    recession = Cone.from_inequalities(n, [], list(fan.rays))
    if recession.rays:
        raise ValueError("polytope is unbounded")
    rows = list(fan.rays)
    vertices: dict[RationalVector, None] = {}
    for subset in combinations(range(len(rows)), n):
        sub = [rows[i] for i in subset]
        if matrix_rank(sub) != n:
            continue
        sol = solve_linear(sub, [-coeffs[i] for i in subset], mode="rational")
        if sol is None or sol.kernel:
            continue
        m = sol.particular
        if all(dot(rows[i], m) >= -coeffs[i] for i in range(len(rows))):
            vertices.setdefault(tuple(Fraction(x) for x in m), None)
    ineqs = tuple((fan.rays[i], coeffs[i]) for i in range(len(rows)))
    return Polytope(ineqs, tuple(sorted(vertices)))


def count_lattice_points(polytope: Polytope, scale: int = 1) -> int:
    """Number of integer points of ``scale * polytope`` (box scan, exact)."""
    if scale < 0:
        raise ValueError("scale must be nonnegative")
    if not polytope.vertices:
        return 0
    dim = len(polytope.vertices[0])
    lo = [min(floor(scale * v[i]) for v in polytope.vertices) for i in range(dim)]
    hi = [max(ceil(scale * v[i]) for v in polytope.vertices) for i in range(dim)]

    count = 0
    point = lo[:]

    def rec(i: int) -> int:
        if i == dim:
            return 1 if all(
                dot(normal, point) >= -scale * offset for normal, offset in polytope.inequalities
            ) else 0
        total = 0
        for x in range(lo[i], hi[i] + 1):
            point[i] = x
            total += rec(i + 1)
        return total

    count = rec(0)
    return count


def _interpolate(values: Sequence[int]) -> tuple[Fraction, ...]:
    """Coefficients (ascending) of the degree-(len-1) polynomial through (i, values[i])."""
    d = len(values) - 1
    coeffs = [Fraction(0)] * (d + 1)
    for i, val in enumerate(values):
        # Lagrange basis polynomial for node i over nodes 0..d.
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(d + 1):
            if j == i:
                continue
            widened = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):  # multiply by (x - j)
                widened[k + 1] += c
                widened[k] -= j * c
            basis = widened
            denom *= i - j
        for k in range(len(basis)):
            coeffs[k] += Fraction(val) * basis[k] / denom
    return tuple(coeffs)


def polytope_degree(polytope: Polytope, intrinsic_dim: int) -> tuple[tuple[Fraction, ...], int]:
    """Lattice-point counting polynomial of a bounded integral polytope.

    Counts points of t*P for t = 0..d, interpolates the degree-d counting
    polynomial, and returns it (coefficients ascending) with the degree
    d! * leading coefficient, an integer for integral polytopes.
    """
    if not polytope.vertices:
        raise ValueError("empty polytope")
    for v in polytope.vertices:
        if any(Fraction(x).denominator != 1 for x in v):
            raise ValueError("scale divisor to its Cartier index first: polytope has non-integral vertices")
    base = polytope.vertices[0]
    diffs = [tuple(x - y for x, y in zip(v, base)) for v in polytope.vertices[1:]]
    actual_dim = matrix_rank(diffs) if diffs else 0
    if actual_dim != intrinsic_dim:
        raise ValueError(f"polytope has affine dimension {actual_dim}, expected {intrinsic_dim}")
    counts = [count_lattice_points(polytope, t) for t in range(intrinsic_dim + 1)]
    coeffs = _interpolate(counts)
    leading = coeffs[intrinsic_dim] * factorial(intrinsic_dim)
    if leading.denominator != 1:
        raise InvariantError("integral polytope produced a non-integral degree")
    return coeffs, int(leading)


_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _power(base: str, exp: int) -> str:
    if exp == 0:
        return "1"
    if exp == 1:
        return base
    return base + str(exp).translate(_SUPERSCRIPTS)


def chern_growth(n: int, degree: int) -> GrowthReport:
    """The leading-term statement degree * t^(n-1) for the bundle family.

    Only the top coefficient is pinned down by the degree of the ample class;
    everything below it is reported as unknown.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    if degree < 1:
        raise ValueError("degree must be positive")
    lead = _power("t", n - 1)
    term = lead if degree == 1 else f"{degree}{lead}"
    statement = f"c{str(n).translate(_SUBSCRIPTS)}(E_t) = {term} + O({_power('t', n - 2)})"
    return GrowthReport(n, degree, statement)
