"""
Exact integer feasibility and class-group monoids
=================================================

The three-valued solver behind every membership question, then
submonoids of a finitely generated abelian group.
"""

from orbitoric.divclass import toric_class_group
from orbitoric.intfeas import FeasibilityProblem, integer_feasible
from orbitoric.monoid import gamma_of_orbit, is_saturated, member, monoid_equal
from orbitoric.polyhedral import cone_from_rays
from orbitoric.lattice import identity

# 2a + 3b = 7 with a, b >= 0
p = FeasibilityProblem(2, [(2, 3)], [7], (), (), frozenset({0, 1}))
r = integer_feasible(p)
print(r.verdict.value, r.witness)

# 2a + 3b = 1 has no nonnegative solution; the answer is a proof, not a timeout
print(integer_feasible(FeasibilityProblem(2, [(2, 3)], [1], (), (), frozenset({0, 1}))).verdict)

# An unbounded strip without lattice points is still decided
strip = FeasibilityProblem(2, (), (), [(3, -3), (-3, 3)], [1, -2])
print("strip:", integer_feasible(strip).verdict)

# Gamma monoids of the quadric cone: generators for no divisors vs all divisors
quad = toric_class_group(cone_from_rays([(1, 0), (1, 2)]))
g_origin = gamma_of_orbit(quad, [])
g_open = gamma_of_orbit(quad, list(quad.basis.labels))
print("Gamma(origin) =", g_origin, " Gamma(open) =", g_open)
odd = g_open.generators[0]
print("nontrivial class in Gamma(origin)?", member(g_origin, odd).verdict.value)
print("equal?", monoid_equal(g_origin, g_open).verdict.value)

# Saturation depends on the reference lattice
print(is_saturated([(1, 0), (1, 2)]).verdict.value)
print(is_saturated([(1, 0), (1, 2)], lattice=identity(2)))
