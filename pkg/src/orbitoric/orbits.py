"""Orbits of affine toric, complete toric and affine horospherical data.

Two partitions of the orbit set are computed:

* the *monoid partition*: orbits with equal ``Gamma(O)`` are grouped. For
  complete or affine toric varieties this is exactly the partition into
  ``Aut(X)^0``-orbits; for horospherical data equality of ``Gamma_G`` is only
  a necessary condition for two orbits to be glued.
* the *connectivity partition* (affine data): the closure of the relation
  "``tau`` and ``zeta = cone(tau, rho)`` are linked by a root with
  distinguished ray ``rho`` vanishing on ``tau``". For affine toric data it
  is the ``Aut(X)^0`` partition; for horospherical data it is only a
  candidate, since whether a homogeneous LND of that degree exists depends on
  the group action.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import __version__
from .divclass import (ClassGroup, class_of, horospherical_class_group, ray_label,
                       restricted_principal_divisor, toric_class_group)
from .intfeas import DEFAULT_BOUND, FeasibilityResult
from .lattice import GroupElement, IntMatrix, IntVector, as_matrix, determinant, identity, pairing
from .monoid import Comparison, SubMonoid, _MembershipCache, gamma_of_orbit, monoid_equal
from .polyhedral import Cone, Face, Fan, face_dual
from .roots import tau_root_exists

SCHEMA_VERSION = "1"

SUFFICIENCY_CAVEAT = (
    "horospherical data: the connectivity partition is a candidate gluing built from "
    "combinatorial root existence; whether a homogeneous LND of each root degree exists "
    "depends on the group action, which this datum does not encode, so the candidate is "
    "not certified as the Aut(X)^0 partition")
NON_SEPARATION_CAVEAT = (
    "equality of Gamma_G is necessary but not sufficient for two orbits to be glued by "
    "Aut(X)^0; orbits it fails to separate may still lie in different Aut(X)^0-orbits "
    "and the true partition is not computable from the combinatorial datum")
TANGENT_SPACE_CAVEAT = (
    "comparing tangent-space dimensions of the unseparated orbits is a conjectural "
    "refinement and is not computed")
PROJECTIVE_NOTE = (
    "projective mode: results are stated for the affine cone with the homothety factor "
    "included; each orbit of the projective variety is the projectivization of an "
    "orbit of the cone and its Gamma_G monoid is the one computed for that cone orbit")


class OrbitError(ValueError):
    pass


class NotApplicableError(OrbitError):
    """The requested criterion is not an exact criterion for this datum."""


# ---------------------------------------------------------------------------
# Data


@dataclass(frozen=True, eq=False)
class AffineHoroDatum:
    """A cone ``sigma`` in ``N``, the rays carrying invariant divisors, and ``Z(P)``.

    An affine toric variety is the special case with every ray invariant and
    the full weight lattice.
    """

    sigma: Cone
    invariant_rays: tuple[int, ...]
    weight_lattice: IntMatrix
    is_projective_cone: bool = False
    labels: tuple[str, ...] | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if any(not 0 <= i < len(self.sigma.rays) for i in self.invariant_rays):
            raise OrbitError("invariant ray index out of range")
        if self.labels is not None and len(self.labels) != len(self.sigma.rays):
            raise OrbitError("one label per ray of sigma")

    @property
    def kind(self) -> str:
        return "affine_toric" if self.is_toric else "affine_horospherical"

    @property
    def ray_labels(self) -> tuple[str, ...]:
        return self.labels or tuple(ray_label(v) for v in self.sigma.rays)

    @property
    def rays(self) -> tuple[IntVector, ...]:
        return self.sigma.rays

    @cached_property
    def is_toric(self) -> bool:
        n = self.sigma.ambient_rank
        full = len(self.weight_lattice) == n and abs(determinant(self.weight_lattice)) == 1
        return full and set(self.invariant_rays) == set(range(len(self.sigma.rays)))

    @cached_property
    def class_group(self) -> ClassGroup:
        labels = [self.ray_labels[i] for i in self.invariant_rays]
        return horospherical_class_group(self.sigma, self.invariant_rays, self.weight_lattice, labels)


def affine_toric(sigma: Cone, labels: Sequence[str] | None = None) -> AffineHoroDatum:
    return AffineHoroDatum(sigma, tuple(range(len(sigma.rays))), identity(sigma.ambient_rank),
                           labels=tuple(labels) if labels else None)


def affine_horospherical(sigma: Cone, invariant_rays: Iterable[int],
                         weight_lattice: Sequence[Sequence[int]] | None = None,
                         is_projective_cone: bool = False,
                         labels: Sequence[str] | None = None) -> AffineHoroDatum:
    w = identity(sigma.ambient_rank) if weight_lattice is None else as_matrix(weight_lattice)
    return AffineHoroDatum(sigma, tuple(invariant_rays), w, is_projective_cone,
                           tuple(labels) if labels else None)


@dataclass(frozen=True, eq=False)
class ToricFanDatum:
    fan: Fan
    labels: tuple[str, ...] | None = None
    notes: tuple[str, ...] = ()

    kind = "complete_toric_fan"
    is_toric = True
    is_projective_cone = False

    @property
    def rays(self) -> tuple[IntVector, ...]:
        return self.fan.ray_list

    @property
    def ray_labels(self) -> tuple[str, ...]:
        return self.labels or tuple(ray_label(v) for v in self.fan.ray_list)

    @property
    def invariant_rays(self) -> tuple[int, ...]:
        return tuple(range(len(self.fan.ray_list)))

    @cached_property
    def complete(self) -> bool:
        return self.fan.is_complete

    @cached_property
    def class_group(self) -> ClassGroup:
        return toric_class_group(self.fan, self.ray_labels)


Datum = AffineHoroDatum | ToricFanDatum


@dataclass(frozen=True)
class Orbit:
    """The orbit attached to a face of ``sigma`` (or a cone of the fan).

    ``ray_indices`` index the datum's ray list; the open orbit has none.
    """

    id: str
    ray_indices: frozenset[int]
    cone_dim: int
    face: Face | Cone = field(compare=False, repr=False)


def orbits_of(datum: Datum) -> list[Orbit]:
    if isinstance(datum, ToricFanDatum):
        f = datum.fan
        return [Orbit(f"O{i}", f.cone_rays[i], c.dim, c) for i, c in enumerate(f.all_cones)]
    return [Orbit(f"O{i}", t.ray_subset, t.dim, t) for i, t in enumerate(datum.sigma.faces)]


def orbit_dimension(datum: Datum, o: Orbit) -> int | None:
    """Dimension of a torus orbit; ``None`` for horospherical data."""
    if not datum.is_toric:
        return None
    n = datum.fan.ambient_rank if isinstance(datum, ToricFanDatum) else datum.sigma.ambient_rank
    return n - o.cone_dim


def d_of_orbit(datum: Datum, o: Orbit) -> list[str]:
    """Invariant prime divisors not containing the orbit."""
    labels = datum.ray_labels
    return [labels[i] for i in datum.invariant_rays if i not in o.ray_indices]


def gamma(datum: Datum, o: Orbit) -> SubMonoid:
    return gamma_of_orbit(datum.class_group, d_of_orbit(datum, o))


# ---------------------------------------------------------------------------
# Connections


@dataclass(frozen=True)
class ConnectionEvidence:
    smaller_face: str
    larger_face: str
    ray: int
    witness_root: IntVector | None
    source: str  # "combinatorial" | "user_asserted"


@dataclass(frozen=True)
class QueryRecord:
    kind: str
    subject: str
    verdict: str
    witness: IntVector | None = None


def _require_affine(datum):
    if not isinstance(datum, AffineHoroDatum):
        raise NotApplicableError("root connectivity is computed for affine data only")


def rho_connected(datum: AffineHoroDatum, tau: Face, zeta: Face, rho: int,
                  bound: int = DEFAULT_BOUND) -> FeasibilityResult:
    """Is ``zeta = cone(tau, rho)`` reached from ``tau`` through a root of ray ``rho``?"""
    _require_affine(datum)
    if rho in tau.ray_subset or zeta.ray_subset != tau.ray_subset | {rho}:
        return FeasibilityResult.infeasible("zeta is not cone(tau, rho)")
    sigma = datum.sigma
    w = None if datum.is_toric else datum.weight_lattice
    return tau_root_exists(sigma, face_dual(sigma, zeta), rho, bound, w)


class UnionFind:
    """Disjoint sets over ``0 .. n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> bool:
        a, b = self.find(i), self.find(j)
        if a == b:
            return False
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        return True

    def groups(self) -> list[list[int]]:
        blocks: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            blocks.setdefault(self.find(i), []).append(i)
        return sorted(blocks.values())


def _blocks(orbs: Sequence[Orbit], uf: UnionFind) -> list[list[str]]:
    return [[orbs[i].id for i in g] for g in uf.groups()]


@dataclass
class ConnectivityResult:
    partition: list[list[str]]
    evidence: list[ConnectionEvidence]
    unknown: list[tuple[str, str, int]]
    caveats: list[str]
    queries: list[QueryRecord]


def connectivity_partition(datum: AffineHoroDatum, bound: int = DEFAULT_BOUND,
                           asserted: Sequence[tuple[str, str]] = ()) -> ConnectivityResult:
    """Union-find closure of all rho-connections (plus user-asserted links)."""
    _require_affine(datum)
    orbs = orbits_of(datum)
    by_rays = {o.ray_indices: k for k, o in enumerate(orbs)}
    by_id = {o.id: k for k, o in enumerate(orbs)}
    uf = UnionFind(len(orbs))
    evidence, unknown, queries = [], [], []
    for k, o in enumerate(orbs):
        for rho in range(len(datum.sigma.rays)):
            if rho in o.ray_indices:
                continue
            target = by_rays.get(o.ray_indices | {rho})
            if target is None:
                continue
            res = rho_connected(datum, o.face, orbs[target].face, rho, bound)
            subject = f"{o.id} -> {orbs[target].id} via ray {rho}"
            queries.append(QueryRecord("tau_root", subject, res.verdict.value, res.witness))
            if res.is_feasible:
                uf.union(k, target)
                evidence.append(ConnectionEvidence(o.id, orbs[target].id, rho, res.witness,
                                                   "combinatorial"))
            elif res.is_unknown:
                unknown.append((o.id, orbs[target].id, rho))
    for a, b in asserted:
        if a not in by_id or b not in by_id:
            raise OrbitError(f"unknown orbit in asserted connection ({a}, {b})")
        uf.union(by_id[a], by_id[b])
        evidence.append(ConnectionEvidence(a, b, -1, None, "user_asserted"))
    caveats = [] if datum.is_toric else [SUFFICIENCY_CAVEAT]
    if unknown:
        caveats.append(f"{len(unknown)} root queries undecided at bound {bound}; "
                       "the corresponding orbits were not merged")
    return ConnectivityResult(_blocks(orbs, uf), evidence, unknown, caveats, queries)


# ---------------------------------------------------------------------------
# Monoid criterion


@dataclass
class MonoidPartition:
    partition: list[list[str]]
    gammas: dict[str, SubMonoid]
    unknown_pairs: list[tuple[str, str]]
    caveats: list[str]
    queries: list[QueryRecord]
    comparisons: dict[tuple[str, str], Comparison]


def _log(cache: _MembershipCache) -> list[QueryRecord]:
    return [QueryRecord("membership", f"{t} in {m}", r.verdict.value, r.witness)
            for m, t, r in cache.log]


def monoid_partition(datum: Datum, bound: int = DEFAULT_BOUND) -> MonoidPartition:
    """Group orbits by equality of their Gamma monoids; Unknown never merges."""
    orbs = orbits_of(datum)
    gammas = {o.id: gamma(datum, o) for o in orbs}
    cache = _MembershipCache(bound)
    uf = UnionFind(len(orbs))
    # Orbits with identical generator sets are equal without any search.
    first: dict[frozenset, int] = {}
    for k, o in enumerate(orbs):
        key = gammas[o.id].generator_set()
        if key in first:
            uf.union(first[key], k)
        else:
            first[key] = k
    reps = list(first.values())
    unknown, comparisons = [], {}
    for i, j in itertools.combinations(reps, 2):
        a, b = orbs[i].id, orbs[j].id
        cmp = monoid_equal(gammas[a], gammas[b], bound, query=cache)
        comparisons[(a, b)] = cmp.verdict
        if cmp.verdict is Comparison.EQUAL:
            uf.union(i, j)
        elif cmp.verdict is Comparison.UNKNOWN:
            unknown.append((a, b))
    # A pair left undecided may still be joined through a chain of definite answers.
    pos = {o.id: k for k, o in enumerate(orbs)}
    unknown = [(a, b) for a, b in unknown if uf.find(pos[a]) != uf.find(pos[b])]
    caveats = []
    if unknown:
        caveats.append(f"{len(unknown)} monoid comparisons undecided at bound {bound}; "
                       "the corresponding orbits were not merged")
    return MonoidPartition(_blocks(orbs, uf), gammas, unknown, caveats, _log(cache), comparisons)


def _as_affine(datum: Datum) -> Datum:
    if isinstance(datum, ToricFanDatum) and len(datum.fan.maximal_cones) == 1:
        sigma = datum.fan.maximal_cones[0]
        by_ray = dict(zip(datum.fan.ray_list, datum.ray_labels))
        return affine_toric(sigma, [by_ray[v] for v in sigma.rays])
    return datum


def bazhov_partition(datum: Datum, bound: int = DEFAULT_BOUND) -> MonoidPartition:
    """The monoid partition, where it is an exact criterion (toric data)."""
    if not datum.is_toric:
        raise NotApplicableError(
            "the monoid criterion is only necessary for horospherical data; "
            "use necessary_condition_check")
    if isinstance(datum, ToricFanDatum) and len(datum.fan.maximal_cones) > 1 and not datum.complete:
        raise NotApplicableError("the monoid criterion needs a complete fan or an affine cone")
    return monoid_partition(datum, bound)


@dataclass
class NecessaryConditionReport:
    consistent: bool | None
    violations: list[tuple[str, str, str]]
    unseparated: list[list[str]]
    unknown_pairs: list[tuple[str, str]]
    caveats: list[str]
    queries: list[QueryRecord]
    monoid: MonoidPartition


def necessary_condition_check(datum: Datum, partition: Sequence[Sequence[str]],
                              bound: int = DEFAULT_BOUND,
                              monoid: MonoidPartition | None = None) -> NecessaryConditionReport:
    """Check that orbits sharing a block of ``partition`` have equal Gamma_G.

    A NotEqual pair inside a block means ``partition`` cannot be the
    ``Aut(X)^0`` partition. Blocks of the monoid partition with several orbits
    are reported as the pairs the criterion fails to separate.
    """
    monoid = monoid or monoid_partition(datum, bound)
    ids = {o for block in partition for o in block}
    every = {o for block in monoid.partition for o in block}
    if ids != every or sum(len(b) for b in partition) != len(every):
        raise OrbitError("partition must cover every orbit exactly once")
    cache = _MembershipCache(bound)
    violations, unknown = [], []
    block_of = {o: k for k, block in enumerate(monoid.partition) for o in block}
    for block in partition:
        for a, b in itertools.combinations(block, 2):
            if block_of[a] == block_of[b]:
                continue
            cmp = monoid_equal(monoid.gammas[a], monoid.gammas[b], bound, query=cache)
            if cmp.verdict is Comparison.NOT_EQUAL:
                violations.append((a, b, str(cmp.witness)))
            elif cmp.verdict is Comparison.UNKNOWN:
                unknown.append((a, b))
    unseparated = [list(b) for b in monoid.partition if len(b) > 1]
    caveats = []
    if not datum.is_toric:
        caveats.append(NON_SEPARATION_CAVEAT)
        if unseparated:
            caveats.append(TANGENT_SPACE_CAVEAT)
    if violations:
        consistent = False
    elif unknown:
        consistent = None
    else:
        consistent = True
    return NecessaryConditionReport(consistent, violations, unseparated, unknown, caveats,
                                    _log(cache), monoid)


def root_relation_holds(datum: AffineHoroDatum, ev: ConnectionEvidence) -> bool:
    """Check the class relation carried by a rho-connection witness.

    For a root ``e`` with distinguished ray ``rho`` carrying a divisor,
    ``0 = -[D_rho] + sum_{i != rho} <e, v_i> [D_i]`` must hold, with all other
    coefficients nonnegative and supported on ``D(O_zeta)``.
    """
    cg = datum.class_group
    if ev.source != "combinatorial" or ev.ray not in datum.invariant_rays:
        return True
    e = ev.witness_root
    div = restricted_principal_divisor(cg, e)
    pos = datum.invariant_rays.index(ev.ray)
    if div.coefficients[pos] != -1:
        return False
    larger = next(o for o in orbits_of(datum) if o.id == ev.larger_face)
    allowed = set(d_of_orbit(datum, larger))
    for label, c in zip(cg.basis.labels, div.coefficients):
        if label == cg.basis.labels[pos]:
            continue
        if c < 0 or (c > 0 and label not in allowed):
            return False
    if not class_of(cg, div).is_zero():
        return False
    # [D_rho] equals the explicit combination of generators of Gamma(O_zeta).
    combo = cg.group.identity_element()
    for label, c in zip(cg.basis.labels, div.coefficients):
        if c > 0:
            combo = combo + c * class_of(cg, cg.prime(label))
    return combo == class_of(cg, cg.prime(cg.basis.labels[pos]))


# ---------------------------------------------------------------------------
# Report


def _vec(v) -> list[str]:
    return [str(x) for x in v]


def _elem(g: GroupElement) -> dict:
    return {"free": _vec(g.free_part), "torsion": _vec(g.torsion_part)}


def class_group_summary(datum: Datum) -> dict:
    cg = datum.class_group
    g = cg.group
    return {
        "name": "Cl" if datum.is_toric else "Cl_G",
        "group": str(g),
        "free_rank": g.free_rank,
        "torsion": _vec(g.torsion_invariants),
        "class_map": [
            {"label": label, "ray": _vec(v), "class": _elem(class_of(cg, cg.prime(label))),
             "class_str": str(class_of(cg, cg.prime(label)))}
            for label, v in zip(cg.basis.labels, cg.basis.ray_vectors)
        ],
    }


def orbit_table(datum: Datum) -> list[dict]:
    out = []
    for o in orbits_of(datum):
        gm = gamma(datum, o)
        out.append({
            "id": o.id,
            "face_rays": sorted(o.ray_indices),
            "cone_dim": o.cone_dim,
            "orbit_dim": orbit_dimension(datum, o),
            "d_labels": d_of_orbit(datum, o),
            "gamma": [_elem(x) for x in gm.generators],
            "gamma_str": str(gm),
        })
    return out


def _query_dict(q: QueryRecord) -> dict:
    return {"kind": q.kind, "subject": q.subject, "verdict": q.verdict,
            "witness": None if q.witness is None else _vec(q.witness)}


@dataclass
class OrbitReport:
    """Everything ``analyze`` computes, as plain JSON-ready data."""

    schema_version: str
    tool_version: str
    datum_kind: str
    bound: int
    is_toric: bool
    projective_cone: bool
    class_group: dict
    orbits: list[dict]
    monoid_partition: list[list[str]]
    monoid_partition_exact: bool
    connectivity_partition: list[list[str]] | None
    evidence: list[dict]
    verdicts: dict[str, str]
    violations: list[list[str]]
    unseparated: list[list[str]]
    warnings: list[str]
    notes: list[str]
    queries: list[dict]

    @property
    def has_unknown(self) -> bool:
        return (any(q["verdict"] == "unknown" for q in self.queries)
                or "undecided" in self.verdicts.values())

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    @classmethod
    def from_dict(cls, d: dict) -> OrbitReport:
        missing = set(cls.__dataclass_fields__) - set(d)
        if missing:
            raise ValueError(f"report is missing fields {sorted(missing)}")
        if d["schema_version"] != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d['schema_version']!r}")
        return cls(**{k: d[k] for k in cls.__dataclass_fields__})


def analyze(datum: Datum, bound: int = DEFAULT_BOUND) -> OrbitReport:
    datum = _as_affine(datum)
    warnings: list[str] = []
    notes = list(datum.notes)
    verdicts: dict[str, str] = {}
    queries: list[QueryRecord] = []

    mono = monoid_partition(datum, bound)
    queries += mono.queries
    warnings += mono.caveats
    exact = datum.is_toric and (isinstance(datum, AffineHoroDatum) or datum.complete)
    if isinstance(datum, ToricFanDatum) and not datum.complete:
        warnings.append("fan is not complete; the monoid partition is not an exact criterion")

    connectivity, evidence, violations, unseparated = None, [], [], []
    if isinstance(datum, AffineHoroDatum):
        conn = connectivity_partition(datum, bound)
        queries += conn.queries
        warnings += conn.caveats
        connectivity = conn.partition
        evidence = [{"smaller": e.smaller_face, "larger": e.larger_face, "ray": e.ray,
                     "witness": None if e.witness_root is None else _vec(e.witness_root),
                     "source": e.source} for e in conn.evidence]
        check = necessary_condition_check(datum, connectivity, bound, monoid=mono)
        queries += check.queries
        violations = [list(v) for v in check.violations]
        unseparated = check.unseparated
        verdicts["necessary_condition"] = {True: "consistent", False: "violated",
                                           None: "undecided"}[check.consistent]
        if check.violations:
            warnings.append("the connectivity partition joins orbits with different Gamma monoids")
        if datum.is_toric:
            same = sorted(map(sorted, connectivity)) == sorted(map(sorted, mono.partition))
            if same:
                verdicts["partitions_agree"] = "yes"
            elif conn.unknown or mono.unknown_pairs:
                verdicts["partitions_agree"] = "undecided"
            else:
                verdicts["partitions_agree"] = "no"
                warnings.append("connectivity and monoid partitions disagree on toric data")
        else:
            verdicts["partitions_agree"] = "n/a"
            if unseparated:
                names = "; ".join("{" + ", ".join(b) + "}" for b in unseparated)
                warnings.append(f"Gamma_G does not separate the orbits {names}")
            warnings += check.caveats
        relations_ok = all(root_relation_holds(datum, e) for e in conn.evidence)
        verdicts["root_class_relations"] = "hold" if relations_ok else "fail"
    else:
        verdicts["partitions_agree"] = "n/a"
    if datum.is_projective_cone:
        notes.append(PROJECTIVE_NOTE)
    verdicts["unknown_queries"] = str(sum(q.verdict == "unknown" for q in queries))

    return OrbitReport(
        schema_version=SCHEMA_VERSION,
        tool_version=__version__,
        datum_kind=datum.kind,
        bound=bound,
        is_toric=datum.is_toric,
        projective_cone=datum.is_projective_cone,
        class_group=class_group_summary(datum),
        orbits=orbit_table(datum),
        monoid_partition=mono.partition,
        monoid_partition_exact=exact,
        connectivity_partition=connectivity,
        evidence=evidence,
        verdicts=verdicts,
        violations=violations,
        unseparated=unseparated,
        warnings=warnings,
        notes=notes,
        queries=[_query_dict(q) for q in queries],
    )
