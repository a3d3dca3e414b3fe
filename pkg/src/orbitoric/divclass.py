"""Divisor class groups of toric and horospherical data.

Both cases share one presentation: the free group on the invariant prime
divisors modulo the rows ``(<m, v_i>)_i`` for ``m`` running over a basis of
the weight lattice. For a toric variety the divisors are all rays and the
weight lattice is ``M``; for a horospherical datum they are the rays carrying
``G``-invariant divisors and the lattice is ``Z(P)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lattice import (AbelianGroup, GroupElement, IntMatrix, IntVector, LatticeError, as_matrix,
                      as_vector, identity, pairing, primitive_vector, quotient_group, rank,
                      solve_integer, transpose)
from .polyhedral import Cone, Fan


class DivisorError(ValueError):
    pass


def ray_label(v: Sequence[int]) -> str:
    return "D(" + ",".join(str(x) for x in v) + ")"


@dataclass(frozen=True)
class DivisorBasis:
    labels: tuple[str, ...]
    ray_vectors: tuple[IntVector, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise DivisorError("divisor labels must be distinct")
        if len(self.labels) != len(self.ray_vectors):
            raise DivisorError("one ray vector per label")
        for v in self.ray_vectors:
            if primitive_vector(v) != tuple(v):
                raise DivisorError(f"ray {v} is not primitive")

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DivisorError(f"unknown divisor label {label!r}") from None


@dataclass(frozen=True)
class WeilDivisor:
    basis: DivisorBasis
    coefficients: IntVector

    def __post_init__(self):
        if len(self.coefficients) != len(self.basis):
            raise DivisorError("coefficient vector does not match the basis")

    def __add__(self, other: WeilDivisor) -> WeilDivisor:
        if other.basis != self.basis:
            raise DivisorError("divisors over different bases")
        return WeilDivisor(self.basis, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> WeilDivisor:
        return WeilDivisor(self.basis, tuple(-a for a in self.coefficients))

    def __sub__(self, other: WeilDivisor) -> WeilDivisor:
        return self + (-other)

    def __str__(self):
        terms = [f"{c}*{l}" for c, l in zip(self.coefficients, self.basis.labels) if c]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class ClassGroup:
    basis: DivisorBasis
    group: AbelianGroup
    weight_lattice_basis: IntMatrix

    def divisor(self, coefficients: Sequence[int]) -> WeilDivisor:
        return WeilDivisor(self.basis, as_vector(coefficients))

    def prime(self, label: str) -> WeilDivisor:
        i = self.basis.index(label)
        return self.divisor(tuple(int(j == i) for j in range(len(self.basis))))

    def __str__(self):
        return str(self.group)


def relation_matrix(rays: Sequence[IntVector], weights: IntMatrix) -> IntMatrix:
    return tuple(tuple(pairing(m, v) for v in rays) for m in weights)


def _make_basis(rays, labels) -> DivisorBasis:
    rays = tuple(tuple(v) for v in rays)
    labels = tuple(labels) if labels is not None else tuple(ray_label(v) for v in rays)
    return DivisorBasis(labels, rays)


def toric_class_group(f: Fan | Cone, labels: Sequence[str] | None = None) -> ClassGroup:
    """``Cl(X)`` of a toric variety: ``Z^{rays}`` modulo ``div(chi^m)``.

    A single cone stands for the affine toric variety of that cone.
    """
    if isinstance(f, Cone):
        rays, n = f.rays, f.ambient_rank
    else:
        rays, n = f.ray_list, f.ambient_rank
    basis = _make_basis(rays, labels)
    weights = identity(n)
    return ClassGroup(basis, quotient_group(len(rays), relation_matrix(basis.ray_vectors, weights)), weights)


def resolve_rays(sigma: Cone, rays: Sequence[int | Sequence[int]]) -> tuple[int, ...]:
    """Map ray indices or ray vectors to indices into ``sigma.rays``."""
    out = []
    for r in rays:
        if isinstance(r, int):
            if not 0 <= r < len(sigma.rays):
                raise DivisorError(f"ray index {r} out of range")
            out.append(r)
            continue
        v = as_vector(r)
        if len(v) != sigma.ambient_rank:
            raise DivisorError(f"ray {list(v)} has the wrong dimension")
        p = primitive_vector(v)
        if p not in sigma.rays:
            raise DivisorError(f"ray {list(v)} is not an extremal ray of the cone")
        out.append(sigma.rays.index(p))
    if len(set(out)) != len(out):
        raise DivisorError("invariant rays listed twice")
    return tuple(out)


def horospherical_class_group(sigma: Cone, invariant_rays: Sequence[int | Sequence[int]],
                              weight_lattice: Sequence[Sequence[int]] | None = None,
                              labels: Sequence[str] | None = None) -> ClassGroup:
    """``Cl_G(X)``: invariant divisors modulo restricted homogeneous divisors."""
    idx = resolve_rays(sigma, invariant_rays)
    n = sigma.ambient_rank
    weights = identity(n) if weight_lattice is None else as_matrix(weight_lattice)
    if any(len(m) != n for m in weights):
        raise DivisorError("weight lattice rows must have the ambient rank")
    if weights and rank(weights) != len(weights):
        raise DivisorError("weight lattice rows must be linearly independent")
    basis = _make_basis([sigma.rays[i] for i in idx], labels)
    return ClassGroup(basis, quotient_group(len(idx), relation_matrix(basis.ray_vectors, weights)), weights)


def in_weight_lattice(cg: ClassGroup, m: Sequence[int]) -> bool:
    w = cg.weight_lattice_basis
    if not w:
        return not any(m)
    return solve_integer(transpose(w), as_vector(m)) is not None


def restricted_principal_divisor(cg: ClassGroup, m: Sequence[int]) -> WeilDivisor:
    """``sum_i <m, v_i> D_i`` over the divisor basis."""
    m = as_vector(m)
    n = len(cg.weight_lattice_basis[0]) if cg.weight_lattice_basis else len(m)
    if len(m) != n:
        raise LatticeError("degree has the wrong length")
    if not in_weight_lattice(cg, m):
        raise DivisorError(f"degree {list(m)} is not in the weight lattice")
    return cg.divisor(tuple(pairing(m, v) for v in cg.basis.ray_vectors))


def class_of(cg: ClassGroup, d: WeilDivisor) -> GroupElement:
    if d.basis != cg.basis:
        raise DivisorError("divisor basis does not match the class group")
    return cg.group.project(d.coefficients)
