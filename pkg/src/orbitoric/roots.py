"""Demazure roots of a ray configuration and the toric homogeneous LNDs.

A Demazure root with distinguished ray ``rho`` is a character ``e`` with
``<e, v_rho> = -1`` and ``<e, v> >= 0`` on every other ray. Given a face of
the dual cone, a root is a root *for that face* when it additionally vanishes
on all other rays orthogonal to the face.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .intfeas import (DEFAULT_BOUND, FeasibilityProblem, FeasibilityResult, integer_feasible,
                      enumerate_points, rational_bounds)
from .lattice import IntMatrix, IntVector, LatticeError, as_matrix, as_vector, pairing, primitive_vector, vecmat
from .polyhedral import Cone, Face, PolyhedralError


class RootError(ValueError):
    pass


@dataclass(frozen=True)
class RayConfig:
    rays: tuple[IntVector, ...]

    def __post_init__(self):
        rays = tuple(as_vector(r) for r in self.rays)
        object.__setattr__(self, "rays", rays)
        for r in rays:
            if primitive_vector(r) != r:
                raise RootError(f"ray {list(r)} is not primitive")
        for i, a in enumerate(rays):
            for b in rays[i + 1:]:
                if a == b:
                    raise RootError(f"ray {list(a)} listed twice")

    @property
    def ambient_rank(self) -> int:
        return len(self.rays[0]) if self.rays else 0

    @classmethod
    def of(cls, obj) -> RayConfig:
        """Rays of a cone or fan (or a plain list of rays)."""
        if isinstance(obj, RayConfig):
            return obj
        if isinstance(obj, Cone):
            return cls(obj.rays)
        if hasattr(obj, "ray_list"):
            return cls(obj.ray_list)
        return cls(tuple(obj))


@dataclass(frozen=True)
class DemazureRoot:
    e: IntVector
    distinguished_ray: int
    ray_vector: IntVector

    def __post_init__(self):
        if pairing(self.e, self.ray_vector) != -1:
            raise RootError("root must pair to -1 with its distinguished ray")


def _check_index(rc: RayConfig, rho: int):
    if not 0 <= rho < len(rc.rays):
        raise RootError(f"ray index {rho} out of range")


def is_root(rc: RayConfig, e: Sequence[int], rho: int) -> bool:
    _check_index(rc, rho)
    e = as_vector(e)
    if len(e) != rc.ambient_rank:
        raise LatticeError("root has the wrong length")
    for i, v in enumerate(rc.rays):
        x = pairing(e, v)
        if (i == rho and x != -1) or (i != rho and x < 0):
            return False
    return True


def root_problem(rc: RayConfig, rho: int, zero_rays: Sequence[int] = (),
                 weight_lattice: IntMatrix | None = None) -> FeasibilityProblem:
    """Root system for ``rho``; ``zero_rays`` must pair to zero with ``e``.

    With ``weight_lattice`` the unknowns are coordinates ``y`` of ``e = y W``.
    """
    _check_index(rc, rho)
    n = rc.ambient_rank
    w = as_matrix(weight_lattice) if weight_lattice is not None else None

    def row(v):
        return tuple(pairing(m, v) for m in w) if w is not None else tuple(v)

    nv = len(w) if w is not None else n
    eq, eq_rhs = [row(rc.rays[rho])], [-1]
    ineq, ineq_rhs = [], []
    zs = set(zero_rays)
    for i, v in enumerate(rc.rays):
        if i == rho:
            continue
        if i in zs:
            eq.append(row(v))
            eq_rhs.append(0)
        else:
            ineq.append(row(v))
            ineq_rhs.append(0)
    return FeasibilityProblem(nv, eq, eq_rhs, ineq, ineq_rhs)


@dataclass(frozen=True)
class RootEnumeration:
    roots: tuple[DemazureRoot, ...]
    complete: bool
    box_bound: int
    per_ray_bounded: tuple[bool, ...]


def _box_rows(n: int, b: int):
    rows, rhs = [], []
    for i in range(n):
        rows.append(tuple(int(j == i) for j in range(n)))
        rhs.append(-b)
        rows.append(tuple(-int(j == i) for j in range(n)))
        rhs.append(-b)
    return rows, rhs


def enumerate_roots(rc, box_bound: int) -> RootEnumeration:
    """All roots with coordinates in ``[-B, B]``.

    ``complete`` is set when every per-ray root polyhedron is bounded and lies
    inside the box, so the list is the whole (finite) root set.
    """
    rc = RayConfig.of(rc)
    if box_bound < 1:
        raise RootError("box_bound must be at least 1")
    n = rc.ambient_rank
    roots, complete, bounded = [], True, []
    br, bb = _box_rows(n, box_bound)
    for rho in range(len(rc.rays)):
        p = root_problem(rc, rho)
        bounds = rational_bounds(p)
        if bounds is None:
            bounded.append(True)
        else:
            ok = all(lo is not None and hi is not None for lo, hi in bounds)
            bounded.append(ok)
            if not ok or any(lo < -box_bound or hi > box_bound for lo, hi in bounds):
                complete = False
        boxed = FeasibilityProblem(n, p.eq_matrix, p.eq_rhs, p.ineq_matrix + tuple(br),
                                   p.ineq_rhs + tuple(bb))
        pts = enumerate_points(boxed)
        if pts is None:
            raise RootError("root enumeration exceeded the search budget")
        roots += [DemazureRoot(e, rho, rc.rays[rho]) for e in pts]
    return RootEnumeration(tuple(roots), complete, box_bound, tuple(bounded))


def normal_rays(sigma: Cone, tau_hat: Face) -> frozenset[int]:
    """Rays of ``sigma`` pairing to zero with all of the dual face ``tau_hat``."""
    if tau_hat.parent is not sigma.dual:
        raise PolyhedralError("tau_hat is not a face of the dual cone of sigma")
    # Normals of the dual cone are the rays of sigma, in order.
    return tau_hat.defining_normals


def tau_root_exists(sigma: Cone, tau_hat: Face, rho: int, bound: int = DEFAULT_BOUND,
                    weight_lattice: IntMatrix | None = None) -> FeasibilityResult:
    """Search for a root with distinguished ray ``rho`` for the dual face ``tau_hat``.

    The witness (when feasible) is the root ``e`` itself, in ``M``.
    """
    normal = normal_rays(sigma, tau_hat)
    if rho not in normal:
        raise RootError(f"ray {rho} is not normal to the given face")
    rc = RayConfig(sigma.rays)
    p = root_problem(rc, rho, sorted(normal - {rho}), weight_lattice)
    res = integer_feasible(p, bound)
    if res.is_feasible and weight_lattice is not None:
        e = vecmat(res.witness, as_matrix(weight_lattice))
        plain = root_problem(rc, rho, sorted(normal - {rho}))
        return FeasibilityResult.feasible(plain, e, res.reason)
    return res


def apply_lnd_toric(root: DemazureRoot, m: Sequence[int]) -> tuple[int, IntVector]:
    """``d_e(chi^m) = <v_rho, m> chi^(m + e)``: (coefficient, new degree)."""
    m = as_vector(m)
    if len(m) != len(root.e):
        raise LatticeError("degree has the wrong length")
    return pairing(root.ray_vector, m), tuple(a + b for a, b in zip(m, root.e))


def lnd_vanishing_order(root: DemazureRoot, m: Sequence[int], limit: int = 10_000) -> int:
    """Number of applications of ``d_e`` after which ``chi^m`` is killed."""
    deg = as_vector(m)
    for k in range(1, limit + 1):
        c, deg = apply_lnd_toric(root, deg)
        if c == 0:
            return k
    raise RootError("derivation did not vanish within the limit")
