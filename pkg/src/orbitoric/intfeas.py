"""Integer feasibility for small systems ``A x = b, C x >= d, x_i >= 0``.

The pipeline is exact:

1. solve the equalities over Z (Hermite form); no solution means infeasible;
2. substitute ``x = x0 + t K`` into the inequalities;
3. project with Fourier-Motzkin; an empty projection means infeasible;
4. depth-first search over ``t`` with per-coordinate bounds read off the
   projections. When the region is unbounded the search runs over a box
   that provably contains an integer point whenever the region does (see
   ``_sufficient_box``); only if that box is too large for the node budget
   are unbounded directions clipped to a window of width ``2 * bound``, and
   exhausting a clipped search gives ``UNKNOWN``.

A FEASIBLE answer always carries a witness that is re-checked against the
original problem.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from .lattice import (IntMatrix, IntVector, as_matrix, as_vector, hermite_normal_form,
                      kernel_basis, pairing, solve_integer, transpose, vecmat)
from .polyhedral import h_to_v

DEFAULT_BOUND = 64
NODE_LIMIT = 2_000_000
BOX_NODE_LIMIT = 200_000


class Verdict(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FeasibilityProblem:
    """Constraints ``eq_matrix x = eq_rhs``, ``ineq_matrix x >= ineq_rhs`` and
    ``x_i >= 0`` for ``i in nonneg``."""

    num_vars: int
    eq_matrix: IntMatrix = ()
    eq_rhs: IntVector = ()
    ineq_matrix: IntMatrix = ()
    ineq_rhs: IntVector = ()
    nonneg: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "eq_matrix", as_matrix(self.eq_matrix))
        object.__setattr__(self, "eq_rhs", as_vector(self.eq_rhs))
        object.__setattr__(self, "ineq_matrix", as_matrix(self.ineq_matrix))
        object.__setattr__(self, "ineq_rhs", as_vector(self.ineq_rhs))
        object.__setattr__(self, "nonneg", frozenset(self.nonneg))
        if len(self.eq_matrix) != len(self.eq_rhs) or len(self.ineq_matrix) != len(self.ineq_rhs):
            raise ValueError("constraint matrix and right-hand side lengths differ")
        if any(len(r) != self.num_vars for r in self.eq_matrix + self.ineq_matrix):
            raise ValueError("constraint rows must have num_vars entries")
        if any(not 0 <= i < self.num_vars for i in self.nonneg):
            raise ValueError("nonneg index out of range")

    def is_satisfied(self, x: Sequence[int]) -> bool:
        if len(x) != self.num_vars:
            return False
        return (all(pairing(r, x) == b for r, b in zip(self.eq_matrix, self.eq_rhs))
                and all(pairing(r, x) >= d for r, d in zip(self.ineq_matrix, self.ineq_rhs))
                and all(x[i] >= 0 for i in self.nonneg))

    def all_inequalities(self) -> list[tuple[IntVector, int]]:
        rows = list(zip(self.ineq_matrix, self.ineq_rhs))
        for i in sorted(self.nonneg):
            rows.append((tuple(int(j == i) for j in range(self.num_vars)), 0))
        return rows


@dataclass(frozen=True)
class FeasibilityResult:
    verdict: Verdict
    witness: IntVector | None = None
    bound_exhausted: int | None = None
    reason: str = field(default="", compare=False)

    @classmethod
    def feasible(cls, problem: FeasibilityProblem, x: Sequence[int], reason: str = "") -> FeasibilityResult:
        x = as_vector(x)
        if not problem.is_satisfied(x):
            raise AssertionError(f"witness {x} does not satisfy the problem")
        return cls(Verdict.FEASIBLE, witness=x, reason=reason)

    @classmethod
    def infeasible(cls, reason: str = "") -> FeasibilityResult:
        return cls(Verdict.INFEASIBLE, reason=reason)

    @classmethod
    def unknown(cls, bound: int, reason: str = "") -> FeasibilityResult:
        return cls(Verdict.UNKNOWN, bound_exhausted=bound, reason=reason)

    @property
    def is_feasible(self) -> bool:
        return self.verdict is Verdict.FEASIBLE

    @property
    def is_infeasible(self) -> bool:
        return self.verdict is Verdict.INFEASIBLE

    @property
    def is_unknown(self) -> bool:
        return self.verdict is Verdict.UNKNOWN

    def __str__(self):
        if self.is_feasible:
            return f"feasible {list(self.witness)}"
        if self.is_unknown:
            return f"unknown (bound {self.bound_exhausted} exhausted)"
        return "infeasible"


# ---------------------------------------------------------------------------
# Fourier-Motzkin on integer rows ``a . t >= b``

Row = tuple[IntVector, int]


class _Empty(Exception):
    pass


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _tidy(rows: list[Row], integral: bool) -> list[Row]:
    """Normalize by gcd, drop trivial rows, keep the strongest of parallel rows.

    With ``integral`` the right-hand side is rounded up, which is valid for
    integer points only.
    """
    best: dict[IntVector, int | Fraction] = {}
    for a, b in rows:
        g = 0
        for x in a:
            g = gcd(g, x)
        if g == 0:
            if b > 0:
                raise _Empty
            continue
        if integral:
            a, b = tuple(x // g for x in a), _ceil_div(b, g)
        elif b % g == 0:
            a, b = tuple(x // g for x in a), b // g
        if a not in best or b > best[a]:
            best[a] = b
    # a.t >= b together with -a.t >= b' needs b <= -b'.
    for a, b in best.items():
        neg = tuple(-x for x in a)
        if neg in best and b + best[neg] > 0:
            raise _Empty
    return sorted(best.items())


def _eliminate(rows: list[Row], j: int, integral: bool) -> list[Row]:
    pos = [(a, b) for a, b in rows if a[j] > 0]
    neg = [(a, b) for a, b in rows if a[j] < 0]
    out = [(a, b) for a, b in rows if a[j] == 0]
    for a, b in pos:
        for c, d in neg:
            p, q = a[j], -c[j]
            out.append((tuple(q * x + p * y for x, y in zip(a, c)), q * b + p * d))
    return _tidy(out, integral)


def _projection_chain(rows: list[Row], k: int, integral: bool) -> list[list[Row]]:
    """``chain[j]`` constrains ``t_0 .. t_{j-1}``; raises _Empty when infeasible."""
    chain: list[list[Row]] = [[] for _ in range(k + 1)]
    chain[k] = _tidy(rows, integral)
    for j in range(k - 1, -1, -1):
        chain[j] = _eliminate(chain[j + 1], j, integral)
    return chain


def _scale_rational(a: Sequence[Fraction | int], b: Fraction | int) -> Row:
    den = 1
    for x in list(a) + [b]:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    return tuple(int(x * den) for x in a), int(b * den)


def _substitute(rows: list[Row], x0: Sequence, kernel: Sequence[Sequence[int]]) -> list[Row]:
    """Rows in x become rows in t under ``x = x0 + t @ kernel``."""
    out = []
    for a, b in rows:
        coeffs = tuple(pairing(a, kv) for kv in kernel)
        rhs = b - sum(ai * xi for ai, xi in zip(a, x0))
        out.append(_scale_rational(coeffs, rhs))
    return out


def _rational_solve(a: IntMatrix, b: IntVector, n: int) -> list[Fraction] | None:
    m = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(a, b)]
    piv_cols, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] != 0 for row in m[r:]):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = m[i][-1]
    return x


def rational_feasible(p: FeasibilityProblem) -> bool:
    """Nonemptiness of the rational relaxation."""
    if p.eq_matrix:
        x0 = _rational_solve(p.eq_matrix, p.eq_rhs, p.num_vars)
        if x0 is None:
            return False
        kernel = list(kernel_basis(p.eq_matrix, p.num_vars))
    else:
        x0 = [0] * p.num_vars
        kernel = [tuple(int(i == j) for j in range(p.num_vars)) for i in range(p.num_vars)]
    rows = _substitute(p.all_inequalities(), x0, kernel)
    try:
        _projection_chain(rows, len(kernel), integral=False)
    except _Empty:
        return False
    return True


def rational_bounds(p: FeasibilityProblem) -> list[tuple[Fraction | None, Fraction | None]] | None:
    """Per-variable bounds of the rational polyhedron (``None`` = unbounded).

    Returns ``None`` when the polyhedron is empty.
    """
    n = p.num_vars
    rows = p.all_inequalities()
    for a, b in zip(p.eq_matrix, p.eq_rhs):
        rows += [(a, b), (tuple(-x for x in a), -b)]
    out = []
    try:
        base = _tidy(rows, integral=False)
        for i in range(n):
            cur = base
            for j in range(n):
                if j != i:
                    cur = _eliminate(cur, j, integral=False)
            lo = hi = None
            for a, b in cur:
                c = a[i]
                if c > 0:
                    v = Fraction(b, c)
                    lo = v if lo is None or v > lo else lo
                elif c < 0:
                    v = Fraction(b, c)
                    hi = v if hi is None or v < hi else hi
            out.append((lo, hi))
    except _Empty:
        return None
    return out


# ---------------------------------------------------------------------------
# Integer search


class _Search:
    def __init__(self, chain: list[list[Row]], k: int, bound: int | None, node_limit: int):
        self.chain = chain
        self.k = k
        self.bound = bound
        self.node_limit = node_limit
        self.nodes = 0
        self.clipped = False
        self.aborted = False
        # Rows of chain[j + 1] that mention t_j, used at level j.
        self.level_rows = [[(a, b) for a, b in chain[j + 1] if a[j]] for j in range(k)]

    def level_bounded(self, j: int) -> bool:
        """Whether ``t_j`` gets both a lower and an upper bound at every prefix."""
        rows = self.level_rows[j]
        return any(a[j] > 0 for a, _ in rows) and any(a[j] < 0 for a, _ in rows)

    def _range(self, j: int, prefix: list[int]):
        lo = hi = None
        for a, b in self.level_rows[j]:
            r = b - sum(a[i] * prefix[i] for i in range(j))
            c = a[j]
            if c > 0:
                v = _ceil_div(r, c)
                lo = v if lo is None or v > lo else lo
            else:
                v = r // c  # c < 0: t <= floor(r / c)
                hi = v if hi is None or v < hi else hi
        if lo is not None and hi is not None:
            return range(lo, hi + 1)
        if self.bound is None:
            raise AssertionError("unbounded search without a bound")
        self.clipped = True
        w = self.bound
        if lo is not None:
            return range(lo, lo + 2 * w + 1)
        if hi is not None:
            return range(hi, hi - 2 * w - 1, -1)
        return [0] + [s * i for i in range(1, w + 1) for s in (1, -1)]

    def points(self) -> Iterator[list[int]]:
        prefix = [0] * self.k
        yield from self._walk(0, prefix)

    def _walk(self, j, prefix):
        if j == self.k:
            yield list(prefix)
            return
        for v in self._range(j, prefix):
            self.nodes += 1
            if self.nodes > self.node_limit:
                self.aborted = True
                return
            prefix[j] = v
            yield from self._walk(j + 1, prefix)
            if self.aborted:
                return


def _parametrize(p: FeasibilityProblem):
    if p.eq_matrix:
        sol = solve_integer(p.eq_matrix, p.eq_rhs, p.num_vars)
        if sol is None:
            return None
        x0, kernel = sol
    else:
        x0 = (0,) * p.num_vars
        kernel = tuple(tuple(int(i == j) for j in range(p.num_vars)) for i in range(p.num_vars))
    return x0, kernel


def _to_x(x0, kernel, t) -> IntVector:
    if not kernel:
        return tuple(x0)
    return tuple(a + b for a, b in zip(x0, vecmat(t, kernel)))


def _drop_lineality(rows: list[Row], k: int) -> tuple[list[Row], IntMatrix]:
    """Unimodular change ``t = s B`` after which rows involve only ``s``.

    The rows of ``B`` span the part of ``Z^k`` the constraints can see;
    coordinates along the lineality space are irrelevant and set to zero.
    """
    if not rows:
        return [], ()
    h, u = hermite_normal_form(transpose([a for a, _ in rows], k))
    r = sum(1 for row in h if any(row))
    return [(tuple(h[l][i] for l in range(r)), b) for i, (_, b) in enumerate(rows)], u[:r]


def _sufficient_box(rows: list[Row], r: int) -> list[tuple[int, int]] | None:
    """Per-coordinate box meeting every nonempty ``{s : a.s >= b}`` (pointed).

    With vertices ``V`` and integral recession rays ``R``, any integer point
    ``s = v + sum mu_j r_j`` can be pulled back to ``s - sum floor(mu_j) r_j``,
    which is still integral, still feasible and lies in
    ``conv(V) + sum [0, 1] r_j``. Returns ``None`` for an empty region.
    """
    cone = [tuple(a) + (-b,) for a, b in rows] + [(0,) * r + (1,)]
    _, gens = h_to_v(cone, r + 1)
    verts = [[Fraction(g[i], g[r]) for i in range(r)] for g in gens if g[r] > 0]
    if not verts:
        return None
    recs = [g[:r] for g in gens if g[r] == 0]
    box = []
    for i in range(r):
        lo = min(v[i] for v in verts) + sum(min(0, g[i]) for g in recs)
        hi = max(v[i] for v in verts) + sum(max(0, g[i]) for g in recs)
        box.append((lo.numerator // lo.denominator, _ceil_div(hi.numerator, hi.denominator)))
    return box


def _boxed_search(rows: list[Row], k: int, node_limit: int):
    """Exact search over a sufficient box; yields ``t`` points or signals abort.

    Returns ``(points_iterator, search)`` or ``None`` when the region is empty.
    """
    srows, basis = _drop_lineality(rows, k)
    r = len(basis)
    if r == 0:
        return iter([[0] * k]), None
    box = _sufficient_box(srows, r)
    if box is None:
        return None
    extra = []
    for i, (lo, hi) in enumerate(box):
        e = tuple(int(j == i) for j in range(r))
        extra += [(e, lo), (tuple(-x for x in e), -hi)]
    chain = _projection_chain(srows + extra, r, integral=True)
    search = _Search(chain, r, None, node_limit)

    def points():
        for s in search.points():
            yield list(vecmat(s, basis))
    return points(), search


def integer_feasible(p: FeasibilityProblem, bound: int = DEFAULT_BOUND,
                     node_limit: int = NODE_LIMIT) -> FeasibilityResult:
    """Decide integer feasibility; UNKNOWN only when every search budget runs out."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    par = _parametrize(p)
    if par is None:
        return FeasibilityResult.infeasible("equalities have no integer solution")
    x0, kernel = par
    rows = _substitute(p.all_inequalities(), x0, kernel)
    try:
        chain = _projection_chain(rows, len(kernel), integral=True)
    except _Empty:
        return FeasibilityResult.infeasible("projection is empty")
    probe = _Search(chain, len(kernel), None, 0)
    bounded = all(probe.level_bounded(j) for j in range(len(kernel)))
    if not bounded:
        try:
            boxed = _boxed_search(rows, len(kernel), min(node_limit, BOX_NODE_LIMIT))
        except _Empty:
            return FeasibilityResult.infeasible("sufficient box is empty")
        if boxed is None:
            return FeasibilityResult.infeasible("region is empty")
        pts, bsearch = boxed
        for t in pts:
            x = _to_x(x0, kernel, t)
            if p.is_satisfied(x):
                return FeasibilityResult.feasible(p, x)
        if bsearch is None or not bsearch.aborted:
            return FeasibilityResult.infeasible("sufficient box exhausted")
    search = _Search(chain, len(kernel), bound, node_limit)
    for t in search.points():
        x = _to_x(x0, kernel, t)
        if p.is_satisfied(x):
            return FeasibilityResult.feasible(p, x)
    if search.aborted:
        return FeasibilityResult.unknown(bound, f"search aborted after {node_limit} nodes")
    if search.clipped:
        return FeasibilityResult.unknown(bound, "unbounded region, clipped search exhausted")
    return FeasibilityResult.infeasible("bounded region exhausted")


def enumerate_points(p: FeasibilityProblem, node_limit: int = NODE_LIMIT) -> list[IntVector] | None:
    """All integer points of a bounded problem, sorted.

    Returns ``None`` if the region is unbounded in the search coordinates or
    the node limit is hit.
    """
    par = _parametrize(p)
    if par is None:
        return []
    x0, kernel = par
    rows = _substitute(p.all_inequalities(), x0, kernel)
    try:
        chain = _projection_chain(rows, len(kernel), integral=True)
    except _Empty:
        return []
    search = _Search(chain, len(kernel), None, node_limit)
    out = []
    try:
        for t in search.points():
            x = _to_x(x0, kernel, t)
            if p.is_satisfied(x):
                out.append(x)
    except AssertionError:
        return None
    if search.aborted:
        return None
    return sorted(out)
