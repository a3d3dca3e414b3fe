import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_pointed_cone
from orbitoric.lattice import pairing
from orbitoric.oracles import brute_force_roots
from orbitoric.polyhedral import cone_from_rays, face_dual, face_of, minimal_face
from orbitoric.roots import (DemazureRoot, RayConfig, RootError, apply_lnd_toric, enumerate_roots,
                             is_root, lnd_vanishing_order, tau_root_exists)

ORTHANT = RayConfig([(1, 0), (0, 1)])
QUADRIC = RayConfig([(1, 0), (1, 2)])
P2 = RayConfig([(1, 0), (0, 1), (-1, -1)])


def test_is_root_examples():
    assert is_root(ORTHANT, (-1, 0), 0)
    assert is_root(QUADRIC, (-1, 2), 0)
    assert not any(is_root(ORTHANT, (-1, -1), r) for r in range(2))
    with pytest.raises(RootError):
        is_root(ORTHANT, (-1, 0), 7)


def test_ray_config_validation():
    with pytest.raises(RootError):
        RayConfig([(2, 0)])
    with pytest.raises(RootError):
        RayConfig([(1, 0), (1, 0)])


def test_enumeration_examples():
    a1 = enumerate_roots(RayConfig([(1,)]), 3)
    assert [r.e for r in a1.roots] == [(-1,)] and a1.complete
    p2 = enumerate_roots(P2, 2)
    assert len(p2.roots) == 6 and p2.complete
    o = enumerate_roots(ORTHANT, 1)
    assert sorted(r.e for r in o.roots) == [(-1, 0), (-1, 1), (0, -1), (1, -1)]
    assert not o.complete


@given(st.integers(0, 10**6))
def test_enumeration_matches_brute_force(seed):
    c = random_pointed_cone(random.Random(seed), max_entry=3)
    rc = RayConfig.of(c)
    enum = enumerate_roots(rc, 3)
    ours = sorted((r.e, r.distinguished_ray) for r in enum.roots)
    assert ours == brute_force_roots(rc.rays, 3)
    assert all(is_root(rc, r.e, r.distinguished_ray) for r in enum.roots)


def test_tau_root_examples():
    o = cone_from_rays([(1, 0), (0, 1)])
    hat = face_dual(o, face_of(o, [0]))  # a ray of the dual cone; ray 0 only is normal
    r = tau_root_exists(o, hat, 0)
    assert r.is_feasible and tuple(r.witness) == (-1, 0)

    line = cone_from_rays([(1,)])
    r = tau_root_exists(line, minimal_face(line.dual), 0)
    assert r.is_feasible and tuple(r.witness) == (-1,)

    q = cone_from_rays([(1, 0), (1, 2)])
    apex = minimal_face(q.dual)
    assert tau_root_exists(q, apex, 0).is_infeasible
    with pytest.raises(RootError):
        tau_root_exists(o, hat, 1)


@given(st.integers(0, 10**6))
def test_ray_face_root_exists_iff_root_set_nonempty(seed):
    # The face of the dual cone dual to ray rho has rho as its only normal ray,
    # so its tau-roots are exactly the roots with distinguished ray rho.
    c = random_pointed_cone(random.Random(seed), max_entry=3)
    rc = RayConfig.of(c)
    enum = enumerate_roots(rc, 4)
    for rho in range(len(c.rays)):
        hat = face_dual(c, face_of(c, [rho]))
        assert hat.defining_normals == {rho}
        res = tau_root_exists(c, hat, rho, bound=64)
        found = [r for r in enum.roots if r.distinguished_ray == rho]
        if found:
            assert res.is_feasible
        if res.is_infeasible:
            assert not found
        if res.is_feasible:
            assert is_root(rc, res.witness, rho)


@given(st.integers(0, 10**6))
def test_tau_root_witness_vanishes_on_normal_rays(seed):
    rng = random.Random(seed)
    c = random_pointed_cone(rng, max_entry=3)
    for hat in c.dual.faces:
        for rho in sorted(hat.defining_normals):
            res = tau_root_exists(c, hat, rho)
            assert not res.is_unknown
            if res.is_feasible:
                e = res.witness
                assert pairing(e, c.rays[rho]) == -1
                assert all(pairing(e, c.rays[i]) == 0 for i in hat.defining_normals - {rho})
                assert all(pairing(e, v) >= 0 for i, v in enumerate(c.rays) if i != rho)


def test_lnd_examples():
    root = DemazureRoot((-1, 0), 0, (1, 0))
    assert apply_lnd_toric(root, (2, 1)) == (2, (1, 1))
    assert apply_lnd_toric(root, (0, 5))[0] == 0
    assert lnd_vanishing_order(root, (2, 1)) == 3
    with pytest.raises(RootError):
        DemazureRoot((1, 0), 0, (1, 0))


@given(st.integers(0, 10**6))
def test_lnd_vanishes_after_pairing_plus_one(seed):
    rng = random.Random(seed)
    c = random_pointed_cone(rng, max_entry=3)
    roots = enumerate_roots(c, 3).roots
    if not roots:
        return
    root = rng.choice(roots)
    coeffs = [rng.randint(0, 3) for _ in c.dual.rays]
    m = tuple(sum(k * g[i] for k, g in zip(coeffs, c.dual.rays)) for i in range(c.ambient_rank))
    assert lnd_vanishing_order(root, m) == pairing(root.ray_vector, m) + 1
