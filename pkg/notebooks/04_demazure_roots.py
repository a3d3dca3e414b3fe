"""
Demazure roots and their derivations
====================================

Root enumeration with a completeness flag, tau-roots on faces, and the
nilpotency of the associated derivation on monomials.
"""

from orbitoric.polyhedral import cone_from_rays, face_dual, face_of
from orbitoric.roots import RayConfig, apply_lnd_toric, enumerate_roots, tau_root_exists

# The projective plane has a finite root set: six roots
p2 = RayConfig([(1, 0), (0, 1), (-1, -1)])
enum = enumerate_roots(p2, 2)
print(len(enum.roots), "roots, complete:", enum.complete)
for r in enum.roots:
    print("  e =", r.e, " distinguished ray", p2.rays[r.distinguished_ray])

# Affine cones have infinitely many; the box enumeration says so
quad = cone_from_rays([(1, 0), (1, 2)])
e = enumerate_roots(quad, 3)
print(len(e.roots), "roots in the box, complete:", e.complete)

# A tau-root for the face dual to ray 0
hat = face_dual(quad, face_of(quad, [0]))
print("tau-root:", tau_root_exists(quad, hat, 0).witness)

# The derivation x^m -> <v_rho, m> x^(m+e) kills x^m after <v_rho, m> + 1 steps
root = e.roots[0]
m, steps, coeff = (3, 1), 0, 1
while coeff:
    k, m = apply_lnd_toric(root, m)
    coeff *= k
    steps += 1
    print("  step", steps, "coefficient", coeff, "degree", m)
