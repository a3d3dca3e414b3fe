"""Finitely generated submonoids of a class group, and saturation of weight monoids."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

from .divclass import ClassGroup, WeilDivisor, class_of
from .intfeas import (DEFAULT_BOUND, FeasibilityProblem, FeasibilityResult, integer_feasible,
                      rational_feasible)
from .lattice import GroupElement, IntVector, LatticeError, as_vector, solve_integer, transpose


@dataclass(frozen=True)
class SubMonoid:
    ambient: ClassGroup
    generators: tuple[GroupElement, ...]
    lifts: tuple[WeilDivisor, ...]

    def generator_set(self) -> frozenset[GroupElement]:
        return frozenset(self.generators)

    def __str__(self):
        if not self.generators:
            return "{0}"
        distinct = list(dict.fromkeys(self.generators))
        return "<" + ", ".join(str(g) for g in distinct) + ">"


def _check_target(m: SubMonoid, target: GroupElement):
    g = m.ambient.group
    if len(target.free_part) != g.free_rank or target.moduli != g.torsion_invariants:
        raise LatticeError("target does not live in the monoid's ambient group")


def membership_problem(m: SubMonoid, target: GroupElement) -> FeasibilityProblem:
    """``sum c_i g_i = target`` with ``c >= 0``; one slack ``k_j`` per torsion factor.

    Variables are ``(c_1 .. c_s, k_1 .. k_t)``; torsion congruences become
    ``sum c_i r_ij - d_j k_j = r_j``.
    """
    _check_target(m, target)
    s = len(m.generators)
    moduli = m.ambient.group.torsion_invariants
    t = len(moduli)
    rows, rhs = [], []
    for r in range(m.ambient.group.free_rank):
        rows.append(tuple(g.free_part[r] for g in m.generators) + (0,) * t)
        rhs.append(target.free_part[r])
    for j, d in enumerate(moduli):
        rows.append(tuple(g.torsion_part[j] for g in m.generators)
                    + tuple(-d if i == j else 0 for i in range(t)))
        rhs.append(target.torsion_part[j])
    return FeasibilityProblem(s + t, rows, rhs, nonneg=frozenset(range(s)))


def member(m: SubMonoid, target: GroupElement, bound: int = DEFAULT_BOUND) -> FeasibilityResult:
    """Is ``target`` a nonnegative integer combination of the generators?

    The witness is ``(c_1 .. c_s, k_1 .. k_t)`` as in ``membership_problem``;
    ``c`` gives the multiplicities of the generators.
    """
    problem = membership_problem(m, target)
    s, t = len(m.generators), len(target.moduli)
    if target.is_zero():
        return FeasibilityResult.feasible(problem, (0,) * (s + t))
    if target in m.generators:
        i = m.generators.index(target)
        return FeasibilityResult.feasible(problem, tuple(int(j == i) for j in range(s)) + (0,) * t)
    return integer_feasible(problem, bound)


class Comparison(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class MonoidComparison:
    verdict: Comparison
    witness: GroupElement | None = None
    witness_side: str | None = None  # "a" if a's generator is missing from b
    undecided: tuple[GroupElement, ...] = ()


class _MembershipCache:
    """Memoizes membership queries keyed on generator sets."""

    def __init__(self, bound: int):
        self.bound = bound
        self.store: dict[tuple[frozenset, GroupElement], FeasibilityResult] = {}
        self.log: list[tuple[SubMonoid, GroupElement, FeasibilityResult]] = []

    def __call__(self, m: SubMonoid, target: GroupElement) -> FeasibilityResult:
        key = (m.generator_set(), target)
        if key not in self.store:
            res = member(m, target, self.bound)
            self.store[key] = res
            self.log.append((m, target, res))
        return self.store[key]


def _check_same(a: SubMonoid, b: SubMonoid):
    if a.ambient.group != b.ambient.group:
        raise LatticeError("monoids live in different groups")


def monoid_equal(a: SubMonoid, b: SubMonoid, bound: int = DEFAULT_BOUND, query=None) -> MonoidComparison:
    """Equality by mutual generator membership."""
    _check_same(a, b)
    query = query or (lambda m, t: member(m, t, bound))
    undecided = []
    for side, src, dst in (("a", a, b), ("b", b, a)):
        for g in src.generator_set() - dst.generator_set():
            res = query(dst, g)
            if res.is_infeasible:
                return MonoidComparison(Comparison.NOT_EQUAL, witness=g, witness_side=side)
            if res.is_unknown:
                undecided.append(g)
    if undecided:
        return MonoidComparison(Comparison.UNKNOWN, undecided=tuple(undecided))
    return MonoidComparison(Comparison.EQUAL)


def gamma_of_orbit(cg: ClassGroup, divisor_subset: Sequence[str]) -> SubMonoid:
    """Submonoid generated by the classes of the listed prime divisors."""
    lifts = tuple(cg.prime(label) for label in divisor_subset)
    return SubMonoid(cg, tuple(class_of(cg, d) for d in lifts), lifts)


# ---------------------------------------------------------------------------
# Saturation


class Saturation(enum.Enum):
    SATURATED = "saturated"
    NOT_SATURATED = "not_saturated"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SaturationResult:
    verdict: Saturation
    witness: IntVector | None = None
    reason: str = ""


MAX_SATURATION_RANK = 3
MAX_SATURATION_GENERATORS = 8
MAX_ZONOTOPE_BOX = 200_000


def _in_zonotope(gens, x) -> bool:
    k, n = len(gens), len(x)
    cols = [tuple(g[i] for g in gens) for i in range(n)]
    ineq = [tuple(-int(j == i) for j in range(k)) for i in range(k)]
    p = FeasibilityProblem(k, cols, x, ineq, (-1,) * k, nonneg=frozenset(range(k)))
    return rational_feasible(p)


def is_saturated(generators: Sequence[Sequence[int]], bound: int = DEFAULT_BOUND,
                 lattice: Sequence[Sequence[int]] | None = None) -> SaturationResult:
    """Is the monoid ``P`` generated by ``generators`` equal to ``cone(P) ∩ L``?

    ``L`` defaults to ``Z(P)``, the group generated by ``P``; pass ``lattice``
    (rows spanning an overlattice, e.g. the identity for ``Z^n``) to test
    saturation in a larger lattice. Lattice points of ``L`` in the zonotope
    ``{sum l_i p_i : 0 <= l_i <= 1}`` together with ``P`` generate
    ``cone(P) ∩ L``, so it suffices to test each of them for membership in ``P``.
    """
    gens = [as_vector(g) for g in generators if any(g)]
    if not gens:
        raise ValueError("is_saturated needs a nonzero generator")
    n = len(gens[0])
    lat_cols = transpose(gens) if lattice is None else transpose([as_vector(r) for r in lattice])
    if lattice is not None and any(solve_integer(lat_cols, g) is None for g in gens):
        raise ValueError("generators must lie in the given lattice")
    if n > MAX_SATURATION_RANK or len(gens) > MAX_SATURATION_GENERATORS:
        return SaturationResult(Saturation.UNKNOWN, reason=(
            f"saturation check limited to rank <= {MAX_SATURATION_RANK} and "
            f"<= {MAX_SATURATION_GENERATORS} generators"))
    lo = [sum(min(g[i], 0) for g in gens) for i in range(n)]
    hi = [sum(max(g[i], 0) for g in gens) for i in range(n)]
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > MAX_ZONOTOPE_BOX:
        return SaturationResult(Saturation.UNKNOWN, reason=f"zonotope box has {size} points")
    gen_cols = transpose(gens)
    undecided = None
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if not any(x) or x in gens:
            continue
        if solve_integer(lat_cols, x) is None:  # not in L
            continue
        if not _in_zonotope(gens, x):
            continue
        p = FeasibilityProblem(len(gens), gen_cols, x, nonneg=frozenset(range(len(gens))))
        res = integer_feasible(p, bound)
        if res.is_infeasible:
            return SaturationResult(Saturation.NOT_SATURATED, witness=x,
                                    reason=f"{list(x)} lies in cone(P) and the lattice but not in P")
        if res.is_unknown and undecided is None:
            undecided = x
    if undecided is not None:
        return SaturationResult(Saturation.UNKNOWN, witness=undecided,
                                reason=f"membership of {list(undecided)} undecided at bound {bound}")
    return SaturationResult(Saturation.SATURATED)
