"""
Gluing torus orbits
===================

Both partition methods on affine toric data, the complete-fan case, and
the horospherical example where monoid data cannot see the true answer.
"""

from orbitoric.datafile import parse_datum_text
from orbitoric.orbits import (affine_toric, analyze, bazhov_partition, connectivity_partition,
                              orbits_of)
from orbitoric.polyhedral import cone_from_rays
from orbitoric.selfcheck import fixture_text

quad = affine_toric(cone_from_rays([(1, 0), (1, 2)]))
for o in orbits_of(quad):
    print(o.id, "cone rays", sorted(o.ray_indices), "orbit dim", 2 - o.cone_dim)

conn = connectivity_partition(quad)
print("connectivity:", conn.partition)
for ev in conn.evidence:
    print(f"  {ev.smaller_face} ~ {ev.larger_face} via ray {ev.ray}, root {ev.witness_root}")
mono = bazhov_partition(quad)
print("by Gamma:    ", mono.partition)

# Complete fan: one block, matching a transitive automorphism group
p2 = parse_datum_text(fixture_text("p2.json"))[0]
print("P^2:", bazhov_partition(p2).partition)

# Horospherical datum with no invariant divisors: every Gamma_G is {0}
sl3 = parse_datum_text(fixture_text("sl3.json"))[0]
report = analyze(sl3)
print("Cl_G =", report.class_group["group"], " blocks:", report.monoid_partition)
for w in report.warnings:
    print("warning:", w)
