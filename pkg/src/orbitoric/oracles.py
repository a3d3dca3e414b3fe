"""Slow, independent reference implementations used for cross-checking.

Nothing here shares code with the main algorithms beyond plain integer
arithmetic: invariant factors come from determinantal divisors, roots and
lattice points from exhaustive box search.
"""

from __future__ import annotations

import itertools
from math import gcd
from typing import Sequence

from .intfeas import FeasibilityProblem


def _det(rows: Sequence[Sequence[int]]) -> int:
    # Laplace expansion; fine for the tiny minors used here.
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * _det(minor)
    return total


def determinantal_divisors(a: Sequence[Sequence[int]]) -> list[int]:
    """``d_k`` = gcd of all ``k x k`` minors, for ``k = 1 ..`` rank."""
    a = [list(r) for r in a]
    m = len(a)
    n = len(a[0]) if m else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                g = gcd(g, _det([[a[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g)
    return out


def invariant_factors_oracle(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith invariants ``d_k / d_{k-1}``."""
    d = [1] + determinantal_divisors(a)
    return [d[k] // d[k - 1] for k in range(1, len(d))]


def quotient_oracle(ncols: int, relations: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """(free rank, torsion invariants > 1) of ``Z^ncols / rowspan(relations)``."""
    rel = [list(r) for r in relations if any(r)]
    f = invariant_factors_oracle(rel) if rel else []
    return ncols - len(f), [x for x in f if x > 1]


def brute_force_roots(rays: Sequence[Sequence[int]], box: int) -> list[tuple[tuple[int, ...], int]]:
    """All ``(e, rho)`` with ``e`` in ``[-box, box]^n`` that are Demazure roots."""
    n = len(rays[0])
    out = []
    for e in itertools.product(range(-box, box + 1), repeat=n):
        vals = [sum(a * b for a, b in zip(e, v)) for v in rays]
        for rho, x in enumerate(vals):
            if x == -1 and all(y >= 0 for i, y in enumerate(vals) if i != rho):
                out.append((e, rho))
    return sorted(out)


def box_points(p: FeasibilityProblem, box: int) -> list[tuple[int, ...]]:
    """Integer solutions of ``p`` with all coordinates in ``[-box, box]``."""
    ranges = [range(0 if i in p.nonneg else -box, box + 1) for i in range(p.num_vars)]
    return [x for x in itertools.product(*ranges) if p.is_satisfied(x)]


def box_feasible(p: FeasibilityProblem, box: int) -> tuple[int, ...] | None:
    ranges = [range(0 if i in p.nonneg else -box, box + 1) for i in range(p.num_vars)]
    for x in itertools.product(*ranges):
        if p.is_satisfied(x):
            return x
    return None


def monoid_member_oracle(generators: Sequence[Sequence[int]], moduli: Sequence[int],
                         target: Sequence[int], box: int) -> bool:
    """Search ``c in [0, box]^s`` for ``sum c_i g_i == target``.

    Group elements are flat coordinate vectors whose last ``len(moduli)``
    entries are residues.
    """
    t = len(moduli)
    f = len(target) - t
    for c in itertools.product(range(box + 1), repeat=len(generators)):
        s = [sum(ci * g[k] for ci, g in zip(c, generators)) for k in range(len(target))]
        ok = all(s[k] == target[k] for k in range(f))
        ok = ok and all((s[f + j] - target[f + j]) % d == 0 for j, d in enumerate(moduli))
        if ok:
            return True
    return False
