"""Rational polyhedral cones, their duals and face lattices, and fans.

Cones live in an integer lattice ``Z^n`` and are stored with both
representations:

* V-side: ``lineality`` (a Z-basis of the largest contained subspace) and
  ``rays`` (primitive extremal rays modulo the lineality space);
* H-side: ``equations`` (a Z-basis of the orthogonal complement of the span)
  and ``normals`` (primitive facet normals).

The dual cone swaps the two sides, so ``dual_cone(dual_cone(c)) == c``
holds exactly. Fans are taken to live in ``N``; their cones must be pointed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import (IntVector, LatticeError, as_vector, kernel_basis, pairing,
                      primitive_vector, rank)


class PolyhedralError(ValueError):
    pass


class InvalidFanError(PolyhedralError):
    """Two cones of a fan do not meet along a common face."""

    def __init__(self, i: int, j: int, detail: str = ""):
        self.pair = (i, j)
        msg = f"cones {i} and {j} do not intersect in a common face"
        super().__init__(msg + (f": {detail}" if detail else ""))


def _normalize(v: Sequence[int]) -> IntVector | None:
    return None if not any(v) else primitive_vector(v)


def _dedupe(vectors: Iterable[IntVector]) -> list[IntVector]:
    seen, out = set(), []
    for v in vectors:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def h_to_v(inequalities: Sequence[Sequence[int]], n: int) -> tuple[tuple[IntVector, ...], tuple[IntVector, ...]]:
    """Double description: generators of ``{x : a.x >= 0 for every row a}``.

    Returns ``(lineality_basis, rays)``; rays are primitive and irredundant
    modulo the lineality space.
    """
    ineqs = [tuple(a) for a in inequalities if any(a)]
    lin: list[IntVector] = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays: list[IntVector] = []
    processed: list[IntVector] = []
    for a in ineqs:
        k = next((k for k, l in enumerate(lin) if pairing(a, l)), None)
        if k is not None:
            # Cut the lineality space: the pivot direction becomes a ray and
            # everything else is projected into the hyperplane a = 0.
            pivot = lin[k]
            pa = pairing(a, pivot)
            if pa < 0:
                pivot, pa = tuple(-x for x in pivot), -pa
            lin = [primitive_vector(tuple(pa * x - pairing(a, l) * y for x, y in zip(l, pivot)))
                   for j, l in enumerate(lin) if j != k]
            rays = [primitive_vector(tuple(pa * x - pairing(a, r) * y for x, y in zip(r, pivot)))
                    for r in rays]
            rays = _dedupe(rays + [primitive_vector(pivot)])
            processed.append(a)
            continue
        vals = [pairing(a, r) for r in rays]
        pos = [(r, x) for r, x in zip(rays, vals) if x > 0]
        neg = [(r, x) for r, x in zip(rays, vals) if x < 0]
        new = [r for r, x in zip(rays, vals) if x >= 0]
        # rp, rn are adjacent iff their common tight constraints cut out a
        # 2-dimensional face modulo the lineality space.
        target = n - len(lin) - 2
        for rp, xp in pos:
            tight_p = [b for b in processed if pairing(b, rp) == 0]
            for rn, xn in neg:
                common = [b for b in tight_p if pairing(b, rn) == 0]
                if rank(common) != target:
                    continue
                new.append(primitive_vector(tuple(xp * y - xn * x for x, y in zip(rp, rn))))
        rays = _dedupe(new)
        processed.append(a)
    return (kernel_basis(ineqs, n) if ineqs else tuple(lin)), tuple(rays)


@dataclass(frozen=True, eq=False)
class Cone:
    """A rational polyhedral cone in ``Q^n`` with both representations."""

    ambient_rank: int
    generators: tuple[IntVector, ...]
    rays: tuple[IntVector, ...]
    normals: tuple[IntVector, ...]
    lineality: tuple[IntVector, ...]
    equations: tuple[IntVector, ...]
    _dual: list = field(default_factory=list, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.ambient_rank - len(self.equations)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient_rank:
            raise LatticeError("point has the wrong length")
        return (all(pairing(e, v) == 0 for e in self.equations)
                and all(pairing(u, v) >= 0 for u in self.normals))

    def contains_cone(self, other: Cone) -> bool:
        pts = list(other.rays) + list(other.lineality) + [tuple(-x for x in l) for l in other.lineality]
        return all(self.contains(p) for p in pts)

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return (self.ambient_rank == other.ambient_rank
                and self.contains_cone(other) and other.contains_cone(self))

    def __hash__(self):
        return hash((self.ambient_rank, frozenset(self.rays) if self.is_pointed else len(self.rays)))

    @property
    def dual(self) -> Cone:
        return dual_cone(self)

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return _enumerate_faces(self)

    def face_cone(self, face: Face) -> Cone:
        """The face as a cone in its own right."""
        return cone_from_rays([self.rays[i] for i in face.ray_subset]
                              + list(self.lineality) + [tuple(-x for x in l) for l in self.lineality],
                              ambient_rank=self.ambient_rank)

    def __repr__(self):
        return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"


@dataclass(frozen=True)
class Face:
    """A face of ``parent``: the span of some rays (plus the lineality space).

    ``defining_normals`` lists every facet normal of the parent vanishing on
    the face, so the face equals the parent cut by those hyperplanes.
    """

    parent: Cone = field(compare=False, repr=False)
    ray_subset: frozenset[int]
    defining_normals: frozenset[int]
    dim: int

    def __repr__(self):
        return f"Face(rays={sorted(self.ray_subset)}, dim={self.dim})"

    @property
    def rays(self) -> list[IntVector]:
        return [self.parent.rays[i] for i in sorted(self.ray_subset)]


def cone_from_rays(gens: Iterable[Sequence[int]], ambient_rank: int | None = None) -> Cone:
    """Cone generated by ``gens``; rational input should be scaled beforehand."""
    gens = [as_vector(g) for g in gens]
    if ambient_rank is None:
        if not gens:
            raise PolyhedralError("ambient_rank is required for the zero cone")
        ambient_rank = len(gens[0])
    if any(len(g) != ambient_rank for g in gens):
        raise PolyhedralError("generators have mixed dimensions")
    gens = _dedupe(g for g in (_normalize(g) for g in gens) if g is not None)
    n = ambient_rank
    equations, normals = h_to_v(gens, n)
    lineality = kernel_basis(list(normals) + list(equations), n) if (normals or equations) else \
        tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    rays = _extremal_generators(gens, normals, equations, lineality, n)
    return Cone(n, tuple(gens), rays, tuple(normals), tuple(lineality), tuple(equations))


def _extremal_generators(gens, normals, equations, lineality, n):
    target = n - len(lineality) - 1
    seen_tight, rays = set(), []
    for g in gens:
        tight = frozenset(k for k, u in enumerate(normals) if pairing(u, g) == 0)
        if len(tight) == len(normals):
            continue  # inside the lineality space
        if rank([normals[k] for k in sorted(tight)] + list(equations)) != target:
            continue
        if tight in seen_tight:
            continue
        seen_tight.add(tight)
        rays.append(g)
    return tuple(rays)


def cone_from_inequalities(normals: Iterable[Sequence[int]], n: int) -> Cone:
    """Cone ``{x : u.x >= 0}`` from (not necessarily irredundant) normals."""
    normals = [as_vector(u) for u in normals]
    lin, rays = h_to_v(normals, n)
    gens = list(rays) + list(lin) + [tuple(-x for x in l) for l in lin]
    return cone_from_rays(gens, ambient_rank=n)


def dual_cone(c: Cone) -> Cone:
    """``{m : <m, n> >= 0 for all n in c}``; rays and normals trade places."""
    if c._dual:
        return c._dual[0]
    gens = list(c.normals) + list(c.equations) + [tuple(-x for x in e) for e in c.equations]
    d = Cone(c.ambient_rank, tuple(gens), c.normals, c.rays, c.equations, c.lineality)
    c._dual.append(d)
    d._dual.append(c)
    return d


def _face_dim(c: Cone, rays: frozenset[int]) -> int:
    vecs = [c.rays[i] for i in sorted(rays)] + list(c.lineality)
    return rank(vecs) if vecs else 0


def _enumerate_faces(c: Cone) -> tuple[Face, ...]:
    all_rays = frozenset(range(len(c.rays)))
    top = Face(c, all_rays, frozenset(k for k, u in enumerate(c.normals)
                                      if all(pairing(u, r) == 0 for r in c.rays)),
               c.dim)
    found = {top.ray_subset: top}
    stack = [top]
    while stack:
        f = stack.pop()
        for k in range(len(c.normals)):
            if k in f.defining_normals:
                continue
            sub = frozenset(i for i in f.ray_subset if pairing(c.normals[k], c.rays[i]) == 0)
            if sub in found:
                continue
            normals = frozenset(j for j, u in enumerate(c.normals)
                                if all(pairing(u, c.rays[i]) == 0 for i in sub))
            g = Face(c, sub, normals, _face_dim(c, sub))
            found[sub] = g
            stack.append(g)
    return tuple(sorted(found.values(), key=lambda f: (f.dim, sorted(f.ray_subset))))


def faces(c: Cone) -> tuple[Face, ...]:
    """All faces, sorted by dimension then ray indices."""
    return c.faces


def face_of(c: Cone, ray_indices: Iterable[int]) -> Face:
    """Look up the face with exactly these rays."""
    key = frozenset(ray_indices)
    for f in c.faces:
        if f.ray_subset == key:
            return f
    raise PolyhedralError(f"rays {sorted(key)} do not span a face")


def face_dual(sigma: Cone, tau: Face) -> Face:
    """``sigma^dual ∩ tau^perp`` as a face of the dual cone."""
    if tau.parent is not sigma and tau.parent != sigma:
        raise PolyhedralError("tau is not a face of sigma")
    if tau not in sigma.faces:
        raise PolyhedralError("tau is not a face of sigma")
    d = sigma.dual
    return face_of(d, tau.defining_normals)


def minimal_face(c: Cone) -> Face:
    return c.faces[0]


# ---------------------------------------------------------------------------
# Fans


@dataclass(frozen=True, eq=False)
class Fan:
    """A fan given by pointed maximal cones sharing faces.

    ``ray_list`` is the global list of rays; ``cone_rays[i]`` is the set of
    global ray indices spanning ``all_cones[i]``.
    """

    ambient_rank: int
    maximal_cones: tuple[Cone, ...]
    ray_list: tuple[IntVector, ...]
    all_cones: tuple[Cone, ...]
    cone_rays: tuple[frozenset[int], ...]
    maximal_indices: tuple[int, ...]

    def cone_dim(self, i: int) -> int:
        return self.all_cones[i].dim

    @property
    def is_complete(self) -> bool:
        return is_complete(self)


def _intersection(a: Cone, b: Cone) -> Cone:
    n = a.ambient_rank
    ineqs = list(a.normals) + list(b.normals)
    for e in list(a.equations) + list(b.equations):
        ineqs += [e, tuple(-x for x in e)]
    return cone_from_inequalities(ineqs, n)


def validate_fan(cones: Sequence[Cone]) -> Fan:
    """Check that cones pairwise meet in common faces and collect all faces."""
    if not cones:
        raise PolyhedralError("a fan needs at least one cone")
    n = cones[0].ambient_rank
    if any(c.ambient_rank != n for c in cones):
        raise PolyhedralError("cones have different ambient ranks")
    for i, c in enumerate(cones):
        if not c.is_pointed:
            raise PolyhedralError(f"cone {i} is not pointed")
    for i, j in combinations(range(len(cones)), 2):
        a, b = cones[i], cones[j]
        inter = _intersection(a, b)
        for c in (a, b):
            if not any(c.face_cone(f) == inter for f in c.faces):
                raise InvalidFanError(i, j, f"intersection {list(inter.rays)} is not a face")
    # Drop cones that are faces of other listed cones.
    maximal = [c for i, c in enumerate(cones)
               if not any(j != i and d.contains_cone(c) and not (c.contains_cone(d) and j > i)
                          for j, d in enumerate(cones))]
    ray_list = _dedupe(r for c in maximal for r in c.rays)
    index = {r: k for k, r in enumerate(ray_list)}
    seen: dict[frozenset[int], Cone] = {}
    for c in maximal:
        for f in c.faces:
            key = frozenset(index[c.rays[i]] for i in f.ray_subset)
            if key not in seen:
                seen[key] = c.face_cone(f)
    keys = sorted(seen, key=lambda k: (seen[k].dim, sorted(k)))
    max_keys = {frozenset(index[r] for r in c.rays) for c in maximal}
    return Fan(
        ambient_rank=n,
        maximal_cones=tuple(maximal),
        ray_list=tuple(ray_list),
        all_cones=tuple(seen[k] for k in keys),
        cone_rays=tuple(keys),
        maximal_indices=tuple(i for i, k in enumerate(keys) if k in max_keys),
    )


def is_complete(f: Fan) -> bool:
    """Wall condition: full-dimensional maximal cones, every wall shared twice.

    Fans are placed in ``N_Q`` (the support must be all of ``N_Q``).
    """
    n = f.ambient_rank
    if any(c.dim != n for c in f.maximal_cones):
        return False
    walls: dict[frozenset[int], int] = {}
    for i in f.maximal_indices:
        for k in range(len(f.all_cones)):
            if f.all_cones[k].dim == n - 1 and f.cone_rays[k] <= f.cone_rays[i]:
                walls[f.cone_rays[k]] = walls.get(f.cone_rays[k], 0) + 1
    return bool(walls) and all(v == 2 for v in walls.values())
