"""
Cones, beneath-and-beyond, and validated fans
=============================================

A cone is stored by its primitive extreme rays together with a dual facet
description, so membership, faces, and intersections are all exact.  A fan
is a set of cones that pairwise meet in common faces; validation checks
that axiom and precomputes the wall table.
"""

from toricfan.cone import Cone, Position, classify_position
from toricfan.fan import Fan, WallCurveKind

# The cone over a unit square, embedded at height one.  Four rays, four
# facet normals, and a face lattice with four two-dimensional faces.
square = Cone.from_rays(3, [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
print("rays:", square.rays)
print("facet normals:", square.facet_normals)
print("2-faces:", [f.ray_indices for f in square.faces(2)])

# Redundant generators are dropped and inputs are primitivized.
c = Cone.from_rays(2, [(2, 0), (1, 1), (0, 1)])
print("\nextreme rays only:", c.rays)

# Beneath / beyond: positions of a point against a facet hyperplane with
# inward normal.  The ray (1,0,1) is beyond the x = 0 wall of the cone on
# the other three square rays -- the geometric heart of pyramidal updates.
prime = Cone.from_rays(3, [(0, 1, 1), (-1, 0, 1), (0, -1, 1)])
for normal in prime.facet_normals:
    print((1, 0, 1), "against", normal, "->", classify_position(normal, (1, 0, 1)).value)

# Fans validate the pairwise-intersection axiom.  Two full-dimensional cones
# overlapping in a full-dimensional region are rejected with the offending
# intersection.
try:
    Fan.from_cones(2, [(1, 0), (1, 2), (1, 1), (0, 1)], [[0, 1], [2, 3]])
except ValueError as e:
    print("\nrejected:", e)

# The plane fan of three cones is complete: every wall bounds exactly two
# maximal cones and the adjacency graph is connected.  Each wall carries a
# projective orbit curve.
plane = Fan.from_cones(2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [0, 2], [1, 2]])
print("\ncomplete:", plane.is_complete())
for wall in plane.walls:
    print("wall", wall.ray_indices, "->", plane.wall_kind(wall).value)

# The star of a ray projects to the fan of its divisor.  For the fan of the
# product of two lines, the quotient at any ray is the fan of a line.
product = Fan.from_cones(2, [(1, 0), (0, 1), (-1, 0), (0, -1)],
                         [[0, 1], [1, 2], [2, 3], [0, 3]])
quotient = product.quotient(0)
print("\nquotient rays:", quotient.rays, "cones:", quotient.max_cones)
