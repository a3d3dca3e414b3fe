import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitoric.divclass import ClassGroup, DivisorBasis, class_of, toric_class_group
from orbitoric.lattice import LatticeError, identity, quotient_group
from orbitoric.monoid import (Comparison, Saturation, SubMonoid, gamma_of_orbit, is_saturated,
                              member, monoid_equal)
from orbitoric.oracles import monoid_member_oracle
from orbitoric.polyhedral import cone_from_rays


def synthetic(s, relations):
    """Class group Z^s / relations with primes D0 .. D{s-1}."""
    basis = DivisorBasis(tuple(f"D{i}" for i in range(s)), identity(s))
    return ClassGroup(basis, quotient_group(s, relations), ())


def monoid_of(cg, vectors):
    lifts = tuple(cg.divisor(v) for v in vectors)
    return SubMonoid(cg, tuple(class_of(cg, d) for d in lifts), lifts)


def test_membership_in_z():
    cg = synthetic(1, [])
    one = gamma_of_orbit(cg, ["D0"])
    three, minus = cg.group.project((3,)), cg.group.project((-1,))
    r = member(one, three)
    assert r.is_feasible and r.witness[0] == 3
    assert member(one, minus).is_infeasible


def test_empty_sum_in_z2():
    cg = synthetic(1, [(2,)])
    m = gamma_of_orbit(cg, ["D0"])
    r = member(m, cg.group.identity_element())
    assert r.is_feasible and r.witness[0] == 0


def test_torsion_membership_is_exact():
    cg = synthetic(1, [(255,)])
    m = monoid_of(cg, [(243,), (250,)])
    assert member(m, cg.group.project((44,))).is_feasible
    cg = synthetic(1, [(12,)])
    m = monoid_of(cg, [(4,)])
    assert member(m, cg.group.project((2,))).is_infeasible


def test_ambient_mismatch():
    a = gamma_of_orbit(synthetic(1, []), ["D0"])
    with pytest.raises(LatticeError):
        member(a, synthetic(2, []).group.project((1, 0)))
    with pytest.raises(LatticeError):
        monoid_equal(a, gamma_of_orbit(synthetic(2, []), ["D0"]))


def test_monoid_equal_examples():
    cg = synthetic(1, [])
    one, two = monoid_of(cg, [(1,)]), monoid_of(cg, [(2,)])
    assert monoid_equal(one, one).verdict is Comparison.EQUAL
    cmp = monoid_equal(one, two)
    assert cmp.verdict is Comparison.NOT_EQUAL and str(cmp.witness) == "(1)"
    z2 = synthetic(1, [(2,)])
    a, b = monoid_of(z2, [(1,)]), monoid_of(z2, [(1,), (0,)])
    assert monoid_equal(a, b).verdict is Comparison.EQUAL


def test_gamma_examples():
    cg = synthetic(2, [])
    assert str(gamma_of_orbit(cg, [])) == "{0}"
    quad = toric_class_group(cone_from_rays([(1, 0), (1, 2)]))
    full = gamma_of_orbit(quad, list(quad.basis.labels))
    assert member(full, quad.group.identity_element()).is_feasible
    assert all(member(full, g).is_feasible for g in full.generators)
    with pytest.raises(ValueError):
        gamma_of_orbit(cg, ["nope"])


def _random_setting(rng):
    s = rng.randint(1, 3)
    rel = [tuple(rng.randint(-4, 4) for _ in range(s)) for _ in range(rng.randint(0, 2))]
    cg = synthetic(s, rel)
    gens = [tuple(rng.randint(-3, 3) for _ in range(s)) for _ in range(rng.randint(1, 3))]
    target = tuple(rng.randint(-5, 5) for _ in range(s))
    return cg, monoid_of(cg, gens), cg.group.project(target)


def _flat(g):
    return list(g.free_part) + list(g.torsion_part)


@given(st.integers(0, 10**9))
def test_membership_matches_box_oracle(seed):
    cg, m, t = _random_setting(random.Random(seed))
    r = member(m, t, bound=16)
    hit = monoid_member_oracle([_flat(g) for g in m.generators], cg.group.torsion_invariants,
                               _flat(t), 6)
    if hit:
        assert r.is_feasible
    if r.is_feasible:
        s = len(m.generators)
        total = cg.group.identity_element()
        for c, g in zip(r.witness[:s], m.generators):
            assert c >= 0
            total = total + c * g
        assert total == t


@given(st.integers(0, 10**9))
def test_members_are_closed_under_addition(seed):
    rng = random.Random(seed)
    cg, m, _ = _random_setting(rng)
    x = sum((rng.randint(0, 3) * g for g in m.generators), cg.group.identity_element())
    y = sum((rng.randint(0, 3) * g for g in m.generators), cg.group.identity_element())
    rx, ry, rxy = member(m, x), member(m, y), member(m, x + y)
    assert rx.is_feasible and ry.is_feasible and rxy.is_feasible


@given(st.integers(0, 10**9))
def test_equality_is_an_equivalence(seed):
    rng = random.Random(seed)
    s = rng.randint(1, 2)
    cg = synthetic(s, [tuple(rng.randint(-3, 3) for _ in range(s))])
    ms = [monoid_of(cg, [tuple(rng.randint(-2, 2) for _ in range(s))
                         for _ in range(rng.randint(1, 3))]) for _ in range(3)]
    eq = {}
    for i in range(3):
        for j in range(3):
            eq[i, j] = monoid_equal(ms[i], ms[j]).verdict
    for i in range(3):
        assert eq[i, i] is Comparison.EQUAL
        for j in range(3):
            assert eq[i, j] == eq[j, i]
            for k in range(3):
                if eq[i, j] is Comparison.EQUAL and eq[j, k] is Comparison.EQUAL:
                    assert eq[i, k] is Comparison.EQUAL


def test_redundant_principal_copies_do_not_change_gamma():
    quad = toric_class_group(cone_from_rays([(1, 0), (1, 2)]))
    a = gamma_of_orbit(quad, ["D(1,0)"])
    extra = quad.prime("D(1,0)") + quad.divisor((1, 1)) + quad.divisor((-1, -1))
    b = SubMonoid(quad, a.generators + (class_of(quad, extra),), a.lifts + (extra,))
    assert monoid_equal(a, b).verdict is Comparison.EQUAL


def test_saturation_examples():
    assert is_saturated([(1, 0), (0, 1)]).verdict is Saturation.SATURATED
    assert is_saturated([(2,)]).verdict is Saturation.SATURATED
    assert is_saturated([(2,), (3,)]).verdict is Saturation.NOT_SATURATED
    # Saturated in the lattice it generates, not in Z^2.
    assert is_saturated([(1, 0), (1, 2)]).verdict is Saturation.SATURATED
    r = is_saturated([(1, 0), (1, 2)], lattice=identity(2))
    assert r.verdict is Saturation.NOT_SATURATED and r.witness == (1, 1)


def test_saturation_limits_and_errors():
    r = is_saturated([(1, 0, 0, 0), (0, 1, 0, 0)])
    assert r.verdict is Saturation.UNKNOWN and "rank" in r.reason
    with pytest.raises(ValueError):
        is_saturated([(0, 0)])
    with pytest.raises(ValueError):
        is_saturated([(1, 0)], lattice=[(2, 0), (0, 1)])
