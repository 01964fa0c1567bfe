"""Validated fans: fan axioms, completeness, stars, quotients, isomorphism.

A fan holds a global ordered ray list (the order is semantic: divisors align
to it by index) and maximal cones as ray-index subsets.  Validation checks
the fan axioms pairwise: every intersection of maximal cones must be a common
face, and no maximal cone may contain another.  Walls (the codimension-one
cones) are precomputed at validation time since completeness, subdivision,
and divisor computations all consume them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional, Sequence

from .cone import Cone, Face
from .errors import InvariantError
from .exactlin import (
    LatticeVector,
    determinant,
    dot,
    hermite_normal_form,
    matrix_rank,
    primitive,
    solve_linear,
)


class WallCurveKind(enum.Enum):
    """Orbit-closure type of a wall, by the number of incident full cones."""

    TORUS = "torus"        # in no full-dimensional cone: A^1 minus origin
    AFFINE = "affine"      # in exactly one: A^1
    PROJECTIVE = "projective"  # in exactly two: P^1


@dataclass(frozen=True)
class Wall:
    """A codimension-one cone of the fan with its incident maximal cones."""

    ray_indices: tuple[int, ...]
    dim: int
    incident: tuple[int, ...]


@dataclass(frozen=True)
class FanIsomorphism:
    """A unimodular map together with the ray bijection it induces."""

    matrix: tuple[LatticeVector, ...]
    ray_map: tuple[int, ...]


class Fan:
    """A validated fan of strictly convex rational polyhedral cones."""

    __slots__ = ("ambient_rank", "rays", "max_cones", "cones", "walls")

    def __init__(self, *_a, **_k):
        raise TypeError("use Fan.from_cones")

    @classmethod
    def from_cones(
        cls,
        ambient_rank: int,
        rays: Sequence[Sequence[int]],
        max_cones: Sequence[Sequence[int]],
    ) -> "Fan":
        """Validate and build a fan from global rays and ray-index cones."""
        n = ambient_rank
        ray_list = [tuple(r) for r in rays]
        for i, r in enumerate(ray_list):
            if len(r) != n:
                raise ValueError(f"ray {i} has length {len(r)}, expected {n}")
            if all(x == 0 for x in r):
                raise ValueError(f"ray {i} is zero")
            if primitive(r) != r:
                raise ValueError(f"ray {i} = {r} is not primitive")
        if len(set(ray_list)) != len(ray_list):
            raise ValueError("duplicate rays")
        if not max_cones:
            raise ValueError("fan needs at least one maximal cone")

        index_of = {r: i for i, r in enumerate(ray_list)}
        mc_list: list[tuple[int, ...]] = []
        cones: list[Cone] = []
        for j, mc in enumerate(max_cones):
            idx = sorted(set(mc))
            if len(idx) != len(list(mc)):
                raise ValueError(f"maximal cone {j} repeats a ray index")
            if any(not 0 <= i < len(ray_list) for i in idx):
                raise ValueError(f"maximal cone {j} has a ray index out of range")
            cone = Cone.from_rays(n, [ray_list[i] for i in idx])
            if set(cone.rays) != {ray_list[i] for i in idx}:
                raise ValueError(f"maximal cone {j} lists a non-extreme generator")
            mc_list.append(tuple(idx))
            cones.append(cone)

        used = set().union(*mc_list)
        for i in range(len(ray_list)):
            if i not in used:
                raise ValueError(f"ray {i} does not appear in any maximal cone")

        for i in range(len(cones)):
            for j in range(i + 1, len(cones)):
                meet = cones[i].intersect(cones[j])
                if meet.rays == cones[i].rays or meet.rays == cones[j].rays:
                    raise ValueError(f"redundant maximal cone: {i} and {j} are nested")
                if not (meet.is_face_of(cones[i]) and meet.is_face_of(cones[j])):
                    raise ValueError(
                        f"not a fan: cones {i},{j} overlap badly; intersection rays {list(meet.rays)}"
                    )

        walls = cls._collect_walls(n, ray_list, mc_list, cones)
        self = object.__new__(cls)
        object.__setattr__(self, "ambient_rank", n)
        object.__setattr__(self, "rays", tuple(ray_list))
        object.__setattr__(self, "max_cones", tuple(mc_list))
        object.__setattr__(self, "cones", tuple(cones))
        object.__setattr__(self, "walls", walls)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Fan instances are immutable")

    @staticmethod
    def _collect_walls(n, ray_list, mc_list, cones) -> tuple[Wall, ...]:
        # Every (n-1)-dimensional cone of the fan is either a facet of a
        # full-dimensional maximal cone or itself maximal of dimension n-1.
        gidx = {r: i for i, r in enumerate(ray_list)}
        wall_sets: set[frozenset] = set()
        for mc, cone in zip(mc_list, cones):
            if cone.dim == n:
                for facet in cone.facets():
                    wall_sets.add(frozenset(gidx[cone.rays[k]] for k in facet.ray_indices))
            elif cone.dim == n - 1:
                wall_sets.add(frozenset(mc))
        walls = []
        for ws in sorted(wall_sets, key=lambda s: tuple(sorted(s))):
            incident = tuple(
                j for j, (mc, cone) in enumerate(zip(mc_list, cones))
                if cone.dim == n and ws <= set(mc)
            )
            if len(incident) > 2:
                raise InvariantError("wall incident to more than two full cones in a validated fan")
            walls.append(Wall(tuple(sorted(ws)), n - 1, incident))
        return tuple(walls)

    # -- queries -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Fan)
            and self.ambient_rank == other.ambient_rank
            and self.rays == other.rays
            and self.max_cones == other.max_cones
        )

    def __hash__(self) -> int:
        return hash((self.ambient_rank, self.rays, self.max_cones))

    def __repr__(self) -> str:
        return f"Fan(rank={self.ambient_rank}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"

    def ray_index(self, ray: Sequence[int]) -> int:
        r = primitive(ray)
        try:
            return self.rays.index(r)
        except ValueError:
            raise ValueError(f"unknown ray {tuple(ray)}") from None

    def is_complete(self) -> bool:
        """Wall criterion: pure full dimension, two cones per wall, connected."""
        n = self.ambient_rank
        if any(c.dim != n for c in self.cones):
            return False
        if any(len(w.incident) != 2 for w in self.walls):
            return False
        if not self.max_cones:
            return False
        adjacency = {i: set() for i in range(len(self.max_cones))}
        for w in self.walls:
            a, b = w.incident
            adjacency[a].add(b)
            adjacency[b].add(a)
        seen = {0}
        stack = [0]
        while stack:
            for nb in adjacency[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.max_cones)

    def star(self, ray: int) -> tuple[int, ...]:
        """Indices of the maximal cones containing the given ray."""
        if not 0 <= ray < len(self.rays):
            raise ValueError(f"unknown ray index {ray}")
        return tuple(i for i, mc in enumerate(self.max_cones) if ray in mc)

    def quotient(self, ray: int) -> "Fan":
        """The star fan in the quotient lattice by the ray.

        The quotient coordinates come from a Hermite-form completion of the
        primitive ray generator to a lattice basis, so the result is
        deterministic.  The star cones correspond one-to-one to the maximal
        cones of the quotient; this is re-verified during validation.
        """
        star = self.star(ray)
        if not star:
            raise InvariantError("every ray must lie in a maximal cone")
        n = self.ambient_rank
        l_rho = self.rays[ray]
        h, u = hermite_normal_form([l_rho])
        if h[0][0] != 1 or any(x != 0 for x in h[0][1:]):
            raise InvariantError("primitive ray should complete to a lattice basis")
        # Rows 1..n-1 of U^T give integer quotient coordinates with kernel Z*ray.
        proj_rows = [tuple(u[i][j] for i in range(n)) for j in range(1, n)]

        def project(x):
            return tuple(dot(row, x) for row in proj_rows)

        q_rays: list[LatticeVector] = []
        q_index: dict[LatticeVector, int] = {}
        q_cones: list[list[int]] = []
        images = []
        for ci in star:
            gens = [primitive(project(self.rays[k])) for k in self.max_cones[ci] if k != ray]
            cone = Cone.from_rays(n - 1, gens)
            images.append(cone)
            idx = []
            for r in cone.rays:
                if r not in q_index:
                    q_index[r] = len(q_rays)
                    q_rays.append(r)
                idx.append(q_index[r])
            q_cones.append(sorted(idx))
        if len({c.rays for c in images}) != len(star):
            raise InvariantError("star cones collapse in the quotient")
        return Fan.from_cones(n - 1, q_rays, q_cones)

    def wall_kind(self, wall: Wall) -> WallCurveKind:
        """Torus / affine / projective classification of a wall's orbit curve."""
        if wall.dim != self.ambient_rank - 1:
            raise ValueError("wall must have dimension n-1")
        count = len(wall.incident)
        if count == 0:
            return WallCurveKind.TORUS
        if count == 1:
            return WallCurveKind.AFFINE
        if count == 2:
            return WallCurveKind.PROJECTIVE
        raise InvariantError("a wall of a valid fan lies in at most two full cones")

    def find_wall(self, ray_indices: Iterable[int]) -> Wall:
        key = tuple(sorted(ray_indices))
        for w in self.walls:
            if w.ray_indices == key:
                return w
        raise ValueError(f"no wall with rays {key}")

    def isomorphism(self, other: "Fan") -> Optional[FanIsomorphism]:
        """Search for a unimodular map carrying this fan onto the other.

        Candidate images of a spanning ray subset determine the matrix; the
        search prunes on ray valences and verifies that the map sends
        primitive generators to primitive generators and maximal cones to
        maximal cones.  Requires the rays to span the ambient space (true for
        complete fans and their star quotients); identical fans are accepted
        regardless.
        """
        if self.rays == other.rays and set(self.max_cones) == set(other.max_cones):
            return FanIsomorphism(tuple(tuple(1 if i == j else 0 for j in range(self.ambient_rank))
                                        for i in range(self.ambient_rank)),
                                  tuple(range(len(self.rays))))
        if self.ambient_rank != other.ambient_rank:
            return None
        n = self.ambient_rank
        if len(self.rays) != len(other.rays) or len(self.max_cones) != len(other.max_cones):
            return None
        if sorted(len(mc) for mc in self.max_cones) != sorted(len(mc) for mc in other.max_cones):
            return None

        def valences(fan):
            v = [0] * len(fan.rays)
            for mc in fan.max_cones:
                for i in mc:
                    v[i] += 1
            return v

        val1, val2 = valences(self), valences(other)
        if sorted(val1) != sorted(val2):
            return None
        if matrix_rank(self.rays) < n or matrix_rank(other.rays) < n:
            return None  # non-spanning fans: only the identity case above is handled

        # Greedy spanning subset of source rays.
        pivot: list[int] = []
        for i in range(len(self.rays)):
            if matrix_rank([self.rays[j] for j in pivot + [i]]) == len(pivot) + 1:
                pivot.append(i)
            if len(pivot) == n:
                break
        r_cols = tuple(zip(*[self.rays[i] for i in pivot]))  # columns are pivot rays
        det_r = determinant(r_cols)
        adj_r = _adjugate(r_cols)

        other_index = {r: i for i, r in enumerate(other.rays)}
        other_cone_sets = {frozenset(mc) for mc in other.max_cones}
        candidates_by_pos = [
            [j for j in range(len(other.rays)) if val2[j] == val1[pivot[k]]]
            for k in range(n)
        ]

        def try_assignment(images: tuple[int, ...]) -> Optional[FanIsomorphism]:
            s_cols = tuple(zip(*[other.rays[j] for j in images]))
            # A @ R = S  =>  A = S @ R^{-1} = S @ adj(R) / det(R)
            raw = [[dot(s_cols[i], col) for col in zip(*adj_r)] for i in range(n)]
            if any(x % det_r for row in raw for x in row):
                return None
            a = tuple(tuple(x // det_r for x in row) for row in raw)
            if abs(determinant(a)) != 1:
                return None
            ray_map = []
            for r in self.rays:
                img = tuple(dot(row, r) for row in a)
                j = other_index.get(img)
                if j is None:
                    return None
                ray_map.append(j)
            if len(set(ray_map)) != len(ray_map):
                return None
            mapped = {frozenset(ray_map[i] for i in mc) for mc in self.max_cones}
            if mapped != other_cone_sets:
                return None
            return FanIsomorphism(a, tuple(ray_map))

        def search(depth: int, chosen: list[int]) -> Optional[FanIsomorphism]:
            if depth == n:
                return try_assignment(tuple(chosen))
            for j in candidates_by_pos[depth]:
                if j in chosen:
                    continue
                chosen.append(j)
                found = search(depth + 1, chosen)
                if found is not None:
                    return found
                chosen.pop()
            return None

        return search(0, [])


def _adjugate(m: Sequence[Sequence[int]]) -> tuple:
    """Integer adjugate: m @ adj(m) = det(m) * I."""
    n = len(m)
    if n == 1:
        return ((1,),)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[m[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * determinant(minor)
    return tuple(tuple(row) for row in adj)
