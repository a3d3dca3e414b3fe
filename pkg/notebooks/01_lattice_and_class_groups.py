"""
Integer normal forms and divisor class groups
=============================================

Hermite and Smith forms with their unimodular transforms, then the class
group of a few toric varieties read off from the ray matrix.
"""

from orbitoric.divclass import class_of, toric_class_group
from orbitoric.lattice import hermite_normal_form, matmul, quotient_group, smith_normal_form
from orbitoric.polyhedral import cone_from_rays, validate_fan

A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]

# Row HNF: U A = H
H, U = hermite_normal_form(A)
print("H =", H)
assert matmul(U, A) == H

# SNF: U A V = S, divisibility chain on the diagonal
snf = smith_normal_form(A)
print("Smith diagonal:", snf.diagonal)
assert matmul(matmul(snf.U, A), snf.V) == snf.S

# The cokernel Z^3 / rowspan(A) in canonical coordinates
G = quotient_group(3, A)
print("Z^3 / rowspan(A) =", G)
x = G.project((1, 1, 1))
print("class of (1,1,1):", x, " order-2 multiple:", 2 * x)

# Quadric cone: rays (1,0) and (1,2), Cl = Z/2
quad = toric_class_group(cone_from_rays([(1, 0), (1, 2)]))
print("quadric Cl =", quad.group)
for label in quad.basis.labels:
    print(" ", label, "->", class_of(quad, quad.prime(label)))

# Projective plane: three rays, Cl = Z, every prime divisor has class 1
cones = [[(1, 0), (0, 1)], [(0, 1), (-1, -1)], [(-1, -1), (1, 0)]]
p2 = toric_class_group(validate_fan([cone_from_rays(c) for c in cones]))
print("P^2 Cl =", p2.group, [str(class_of(p2, p2.prime(l))) for l in p2.basis.labels])
