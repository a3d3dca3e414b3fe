"""Exact integer linear algebra.

Matrices are tuples of row tuples of Python ints, so every value is exact and
immutable. Hermite and Smith forms are computed with elementary row/column
operations; the Smith form also yields the invariant-factor presentation of a
finitely generated abelian group ``Z^k / rowspan(R)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


class LatticeError(ValueError):
    """Raised on malformed lattice input (length mismatch, zero vector...)."""


def as_vector(v: Iterable[int]) -> IntVector:
    out = tuple(int(x) for x in v)
    return out


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    m = tuple(as_vector(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise LatticeError("matrix rows have different lengths")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Transpose; ``ncols`` fixes the shape of a matrix with no rows."""
    if not a:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*a))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def vecmat(v: Sequence[int], a: Sequence[Sequence[int]]) -> IntVector:
    """Row vector times matrix."""
    if not a:
        return ()
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0])))


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(pairing(row, v) for row in a)


def pairing(m: Sequence[int], v: Sequence[int]) -> int:
    """The pairing between the character lattice and the one-parameter lattice."""
    if len(m) != len(v):
        raise LatticeError(f"pairing of vectors of lengths {len(m)} and {len(v)}")
    return sum(x * y for x, y in zip(m, v))


def primitive_vector(v: Sequence[int]) -> IntVector:
    """Divide ``v`` by the gcd of its coordinates (sign preserved)."""
    g = reduce(gcd, v, 0)
    if g == 0:
        raise LatticeError("the zero vector has no primitive generator")
    return tuple(x // g for x in v)


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    if any(len(r) != n for r in m):
        raise LatticeError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


# ---------------------------------------------------------------------------
# Hermite normal form


def hermite_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``. ``H`` is in row
    echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)``, and zero rows at the bottom.
    """
    h = [list(r) for r in as_matrix(a)]
    if not h:
        raise LatticeError("hermite_normal_form of an empty matrix")
    nrows, ncols = len(h), len(h[0])
    u = [list(r) for r in identity(nrows)]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            if h[i][c] == 0:
                continue
            g, s, t = _xgcd(h[r][c], h[i][c])
            p, q = h[r][c] // g, h[i][c] // g
            # [[s, t], [-q, p]] has determinant s*p + t*q = 1.
            for mat in (h, u):
                top, bot = mat[r], mat[i]
                mat[r] = [s * x + t * y for x, y in zip(top, bot)]
                mat[i] = [-q * x + p * y for x, y in zip(top, bot)]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        piv = h[r][c]
        for i in range(r):
            f = h[i][c] // piv
            if f:
                h[i] = [x - f * y for x, y in zip(h[i], h[r])]
                u[i] = [x - f * y for x, y in zip(u[i], u[r])]
        r += 1
    return as_matrix(h), as_matrix(u)


def rank(a: Sequence[Sequence[int]]) -> int:
    if not a or not a[0]:
        return 0
    h, _ = hermite_normal_form(a)
    return sum(1 for row in h if any(row))


def kernel_basis(a: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Rows form a Z-basis of ``{x in Z^n : A x = 0}``."""
    n = len(a[0]) if a else ncols
    if n is None:
        raise LatticeError("kernel_basis needs ncols for a matrix with no rows")
    if not a:
        return identity(n)
    if n == 0:
        return ()
    h, u = hermite_normal_form(transpose(a))
    return tuple(u[i] for i in range(n) if not any(h[i]))


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None
                  ) -> tuple[IntVector, IntMatrix] | None:
    """All integer solutions of ``A x = b``.

    Returns ``(x0, K)`` so that the solutions are exactly ``x0 + t @ K`` for
    integer row vectors ``t``, or ``None`` when there is no integer solution.
    """
    n = len(a[0]) if a else ncols
    if n is None:
        raise LatticeError("solve_integer needs ncols for a matrix with no rows")
    if not a:
        return (0,) * n, identity(n)
    if len(b) != len(a):
        raise LatticeError("right-hand side length does not match the matrix")
    if n == 0:
        return ((), ()) if not any(b) else None
    # U A^T = H, so A U^T = H^T and x = U^T y.
    h, u = hermite_normal_form(transpose(a))
    resid = list(b)
    y = [0] * n
    for i, row in enumerate(h):
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is None:
            break
        q, rem = divmod(resid[piv], row[piv])
        if rem:
            return None
        y[i] = q
        resid = [x - q * hv for x, hv in zip(resid, row)]
    if any(resid):
        return None
    x0 = vecmat(y, u)
    kernel = tuple(u[i] for i in range(n) if not any(h[i]))
    return x0, kernel


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal.

    ``V_inv`` is kept alongside ``V`` so that canonical coordinates can be
    lifted back to the ambient lattice without a rational inverse.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> IntVector:
        k = min(len(self.S), len(self.S[0]) if self.S else 0)
        return tuple(self.S[i][i] for i in range(k))


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form by elementary operations, smallest-|entry| pivoting."""
    s = [list(r) for r in as_matrix(a)]
    if not s:
        raise LatticeError("smith_normal_form of an empty matrix")
    m, n = len(s), len(s[0])
    u = [list(r) for r in identity(m)]
    v = [list(r) for r in identity(n)]
    vi = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vi[i], vi[j] = vi[j], vi[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        s[dst] = [x + f * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in s:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]
        # Inverse of the column operation acts on rows of V^-1.
        vi[src] = [x - f * y for x, y in zip(vi[src], vi[dst])]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(s[i][j]), i, j) for i in range(t, m) for j in range(t, n) if s[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = s[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = s[i][t] // piv
                if q:
                    add_row(i, t, -q)
                dirty |= s[i][t] != 0
            for j in range(t + 1, n):
                q = s[t][j] // piv
                if q:
                    add_col(j, t, -q)
                dirty |= s[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if s[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return SmithDecomposition(as_matrix(u), as_matrix(s), as_matrix(v), as_matrix(vi))


def invariant_factors(a: Sequence[Sequence[int]]) -> IntVector:
    """Nonzero Smith diagonal entries (including ones)."""
    if not a or not a[0]:
        return ()
    return tuple(d for d in smith_normal_form(a).diagonal if d)


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


@dataclass(frozen=True)
class GroupElement:
    """Canonical coordinates: a free part and torsion residues ``[0, d_i)``."""

    free_part: IntVector
    torsion_part: IntVector
    moduli: IntVector

    def __post_init__(self):
        if len(self.torsion_part) != len(self.moduli):
            raise LatticeError("torsion part does not match the moduli")
        if any(not 0 <= r < d for r, d in zip(self.torsion_part, self.moduli)):
            raise LatticeError("torsion residues must be reduced")

    def _compatible(self, other: GroupElement):
        if len(self.free_part) != len(other.free_part) or self.moduli != other.moduli:
            raise LatticeError("group elements live in different groups")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._compatible(other)
        return GroupElement(
            tuple(x + y for x, y in zip(self.free_part, other.free_part)),
            tuple((x + y) % d for x, y, d in zip(self.torsion_part, other.torsion_part, self.moduli)),
            self.moduli)

    def __neg__(self) -> GroupElement:
        return GroupElement(tuple(-x for x in self.free_part),
                            tuple(-x % d for x, d in zip(self.torsion_part, self.moduli)),
                            self.moduli)

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __rmul__(self, k: int) -> GroupElement:
        return GroupElement(tuple(k * x for x in self.free_part),
                            tuple(k * x % d for x, d in zip(self.torsion_part, self.moduli)),
                            self.moduli)

    def is_zero(self) -> bool:
        return not any(self.free_part) and not any(self.torsion_part)

    def __str__(self):
        parts = [str(x) for x in self.free_part]
        parts += [f"{r} mod {d}" for r, d in zip(self.torsion_part, self.moduli)]
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^ambient_rank / rowspan(relations)`` in invariant-factor form.

    Ambient row vectors ``x`` map to ``x @ V``; coordinates whose Smith entry is
    1 are dropped, those with entry ``d > 1`` become residues mod ``d``, and the
    remaining ones form the free part.
    """

    ambient_rank: int
    relations: IntMatrix
    free_rank: int
    torsion_invariants: IntVector
    projection: IntMatrix
    lift_matrix: IntMatrix
    _torsion_coords: IntVector
    _free_coords: IntVector

    @property
    def order(self) -> int | None:
        """Group order, ``None`` when infinite."""
        if self.free_rank:
            return None
        return reduce(lambda x, y: x * y, self.torsion_invariants, 1)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_invariants

    def identity_element(self) -> GroupElement:
        return GroupElement((0,) * self.free_rank, (0,) * len(self.torsion_invariants),
                            self.torsion_invariants)

    def project(self, v: Sequence[int]) -> GroupElement:
        return project(self, v)

    def lift(self, g: GroupElement) -> IntVector:
        """An ambient vector whose class is ``g``."""
        y = [0] * self.ambient_rank
        for c, x in zip(self._free_coords, g.free_part):
            y[c] = x
        for c, x in zip(self._torsion_coords, g.torsion_part):
            y[c] = x
        return vecmat(y, self.lift_matrix)

    def __str__(self):
        parts = (["Z^%d" % self.free_rank] if self.free_rank > 1 else
                 ["Z"] if self.free_rank == 1 else [])
        parts += [f"Z/{d}" for d in self.torsion_invariants]
        return " + ".join(parts) if parts else "0"


def quotient_group(ambient_rank: int, relations: Sequence[Sequence[int]]) -> AbelianGroup:
    """``Z^ambient_rank`` modulo the row span of ``relations``."""
    rel = as_matrix(relations)
    if any(len(r) != ambient_rank for r in rel):
        raise LatticeError("relation rows must have ambient_rank columns")
    rel = tuple(r for r in rel if any(r))
    if not rel or ambient_rank == 0:
        ident = identity(ambient_rank)
        return AbelianGroup(ambient_rank, rel, ambient_rank, (), ident, ident,
                            (), tuple(range(ambient_rank)))
    snf = smith_normal_form(rel)
    diag = list(snf.diagonal) + [0] * (ambient_rank - len(snf.diagonal))
    torsion_coords = tuple(i for i, d in enumerate(diag) if d > 1)
    free_coords = tuple(i for i, d in enumerate(diag) if d == 0)
    return AbelianGroup(
        ambient_rank=ambient_rank,
        relations=rel,
        free_rank=len(free_coords),
        torsion_invariants=tuple(diag[i] for i in torsion_coords),
        projection=snf.V,
        lift_matrix=snf.V_inv,
        _torsion_coords=torsion_coords,
        _free_coords=free_coords,
    )


def project(g: AbelianGroup, v: Sequence[int]) -> GroupElement:
    """Class of the ambient vector ``v`` in canonical coordinates."""
    if len(v) != g.ambient_rank:
        raise LatticeError(f"vector of length {len(v)} in a quotient of Z^{g.ambient_rank}")
    if g.ambient_rank == 0:
        return g.identity_element()
    y = vecmat(v, g.projection)
    return GroupElement(
        tuple(y[i] for i in g._free_coords),
        tuple(y[i] % d for i, d in zip(g._torsion_coords, g.torsion_invariants)),
        g.torsion_invariants,
    )
