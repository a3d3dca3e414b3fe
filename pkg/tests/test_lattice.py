import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import int_matrices
from orbitoric.lattice import (LatticeError, determinant, hermite_normal_form, identity,
                               invariant_factors, kernel_basis, matmul, matvec, pairing,
                               primitive_vector, quotient_group, rank, smith_normal_form,
                               solve_integer, transpose)
from orbitoric.oracles import invariant_factors_oracle, quotient_oracle


def test_primitive_vector():
    assert primitive_vector((2, 4, -6)) == (1, 2, -3)
    assert primitive_vector((0, -3)) == (0, -1)
    with pytest.raises(LatticeError):
        primitive_vector((0, 0))


def test_pairing_length_mismatch():
    with pytest.raises(LatticeError):
        pairing((1, 2), (1, 2, 3))


def test_determinant_small():
    assert determinant([[2, 1], [1, 1]]) == 1
    assert determinant([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3
    assert determinant(identity(4)) == 1


def test_hnf_shape():
    h, u = hermite_normal_form([[2, 4], [1, 3]])
    assert matmul(u, [[2, 4], [1, 3]]) == h
    assert h == ((1, 1), (0, 2))
    # Zero rows sink to the bottom.
    h, _ = hermite_normal_form([[0, 0], [3, 6]])
    assert h[1] == (0, 0) and h[0] == (3, 6)


def test_hnf_rejects_empty():
    with pytest.raises(LatticeError):
        hermite_normal_form([])


@given(int_matrices())
def test_hnf_identity_and_unimodularity(a):
    h, u = hermite_normal_form(a)
    assert matmul(u, a) == h
    assert abs(determinant(u)) == 1
    pivots = []
    for row in h:
        nz = [j for j, x in enumerate(row) if x]
        if nz:
            pivots.append(nz[0])
            assert row[nz[0]] > 0
    assert pivots == sorted(set(pivots))
    for i, p in enumerate(pivots):
        for k in range(i):
            assert 0 <= h[k][p] < h[i][p]


def test_snf_quadric_relations():
    d = smith_normal_form([[1, 1], [0, 2]])
    assert d.diagonal == (1, 2)
    assert invariant_factors([[1, 1], [0, 2]]) == (1, 2)


@given(int_matrices())
def test_snf_identities(a):
    d = smith_normal_form(a)
    assert matmul(matmul(d.U, a), d.V) == d.S
    assert abs(determinant(d.U)) == 1 and abs(determinant(d.V)) == 1
    assert matmul(d.V, d.V_inv) == identity(len(d.V))
    diag = [x for x in d.diagonal if x]
    for i in range(len(d.S)):
        for j in range(len(d.S[0])):
            if i != j:
                assert d.S[i][j] == 0
    for x, y in zip(diag, diag[1:]):
        assert y % x == 0


@given(int_matrices(max_rows=3, max_cols=3))
def test_invariant_factors_match_determinantal_divisors(a):
    assert list(invariant_factors(a)) == invariant_factors_oracle(a)


def test_kernel_and_solve():
    k = kernel_basis([[1, 2, 3]])
    assert len(k) == 2
    for v in k:
        assert pairing((1, 2, 3), v) == 0
    assert solve_integer([[2, 0]], [3]) is None
    x0, kern = solve_integer([[2, 3]], [7])
    assert 2 * x0[0] + 3 * x0[1] == 7 and len(kern) == 1


@given(int_matrices(max_rows=3, max_cols=4), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_solve_integer_solutions_and_kernel(a, t):
    n = len(a[0])
    x = tuple(t[:n])
    b = matvec(a, x)
    x0, kern = solve_integer(a, b)
    assert matvec(a, x0) == b
    for v in kern:
        assert not any(matvec(a, v))
    assert len(kern) == n - rank(a)


def test_quotient_group_examples():
    g = quotient_group(2, [[1, 1], [0, 2]])
    assert str(g) == "Z/2" and g.order == 2
    assert quotient_group(3, [[1, 0, -1], [0, 1, -1]]).free_rank == 1
    assert quotient_group(0, []).is_trivial()
    assert str(quotient_group(2, [])) == "Z^2"


@given(int_matrices(max_rows=3, max_cols=4))
def test_quotient_group_matches_oracle(rel):
    n = len(rel[0])
    g = quotient_group(n, rel)
    assert (g.free_rank, list(g.torsion_invariants)) == quotient_oracle(n, rel)


@given(int_matrices(max_rows=3, max_cols=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_projection_kills_relations_and_lift_is_section(rel, v):
    n = len(rel[0])
    g = quotient_group(n, rel)
    for r in rel:
        assert g.project(r).is_zero()
    x = g.project(v[:n])
    assert g.project(g.lift(x)) == x
    y = g.project(tuple(a + b for a, b in zip(v[:n], rel[0])))
    assert x == y


def test_element_arithmetic():
    g = quotient_group(2, [[1, 1], [0, 2]])
    a = g.project((1, 0))
    assert not a.is_zero() and (a + a).is_zero()
    assert (2 * a).is_zero() and (a - a).is_zero()
    assert str(a) == "(1 mod 2)"


def test_transpose_empty_shape():
    assert transpose([], 3) == ((), (), ())
