"""
Cones, duals, faces and fans
============================

Double description in both directions, the face lattice with its
order-reversing duality, and fan validation.
"""

from orbitoric.polyhedral import (InvalidFanError, cone_from_inequalities, cone_from_rays,
                                  face_dual, validate_fan)

# A cone over a square, and its dual
sigma = cone_from_rays([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, 1)])
print("rays:", sigma.rays)  # (0,0,1) is interior, so it is dropped
print("facet normals:", sigma.normals)
dual = sigma.dual
print("dual rays:", dual.rays)

# Double duality from the inequality side
again = cone_from_inequalities(dual.rays, 3)
assert again == sigma

# Faces by dimension, and the matching face of the dual
for f in sigma.faces:
    fd = face_dual(sigma, f)
    print(f"dim {f.dim}: rays {sorted(f.ray_subset)}  dual face dim {fd.dim}")

# A non-pointed cone keeps its lineality space
half = cone_from_rays([(1, 0), (0, 1), (0, -1)])
print("half-plane lineality:", half.lineality, "pointed:", half.is_pointed)

# Fans: the Hirzebruch surface F_1 is complete; overlapping cones are rejected
f1 = [[(1, 0), (0, 1)], [(0, 1), (-1, 1)], [(-1, 1), (0, -1)], [(0, -1), (1, 0)]]
fan = validate_fan([cone_from_rays(c) for c in f1])
print("F_1 complete:", fan.is_complete)
try:
    validate_fan([cone_from_rays([(1, 0), (0, 1)]), cone_from_rays([(1, 1), (-1, 2)])])
except InvalidFanError as err:
    print("rejected:", err, "pair", err.pair)
