"""Built-in example corpus and a short randomized kernel check."""

from __future__ import annotations

import json
import random
from importlib import resources

from . import __version__
from .datafile import DatumError, parse_datum_text
from .lattice import determinant, hermite_normal_form, matmul, smith_normal_form
from .orbits import analyze
from .polyhedral import cone_from_rays

# fixture -> (class group, monoid partition block sizes, connectivity block sizes or None)
EXPECTED = {
    "p2.json": ("Z", [7], None),
    "hirzebruch1.json": ("Z^2", [3, 6], None),
    "quadric.json": ("Z/2", [1, 3], [1, 3]),
    "a1.json": ("0", [2], [2]),
    "a2.json": ("0", [4], [4]),
    "sl3.json": ("0", [4], [4]),
}
EXPECTED_ERRORS = {"overlapping.json": "invalid fan"}


def fixture_text(name: str) -> str:
    return resources.files("orbitoric").joinpath("fixtures", name).read_text()


def fixture_names() -> list[str]:
    return sorted(p.name for p in resources.files("orbitoric").joinpath("fixtures").iterdir()
                  if p.name.endswith(".json"))


def _sizes(partition):
    return None if partition is None else sorted(len(b) for b in partition)


def check_corpus(bound: int) -> list[tuple[str, bool, str]]:
    out = []
    for name in fixture_names():
        text = fixture_text(name)
        if name in EXPECTED_ERRORS:
            try:
                parse_datum_text(text, name)
                out.append((name, False, "expected a parse error"))
            except DatumError as exc:
                out.append((name, EXPECTED_ERRORS[name] in str(exc), str(exc)))
            continue
        datum, _ = parse_datum_text(text, name)
        r = analyze(datum, bound)
        got = (r.class_group["group"], _sizes(r.monoid_partition), _sizes(r.connectivity_partition))
        want = EXPECTED.get(name)
        ok = want is None or (got[0], got[1], got[2]) == (want[0], sorted(want[1]),
                                                          None if want[2] is None else sorted(want[2]))
        if name == "sl3.json":
            ok = ok and any("not computable" in w for w in r.warnings)
        out.append((name, ok, f"Cl = {got[0]}, blocks {got[1]}, connectivity {got[2]}"))
    return out


def check_kernels(seed: int = 0, trials: int = 25) -> list[tuple[str, bool, str]]:
    rng = random.Random(seed)
    bad_snf = bad_hnf = bad_dual = 0
    for _ in range(trials):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        a = tuple(tuple(rng.randint(-6, 6) for _ in range(n)) for _ in range(m))
        d = smith_normal_form(a)
        if matmul(matmul(d.U, a), d.V) != d.S or abs(determinant(d.U)) != 1 \
                or abs(determinant(d.V)) != 1:
            bad_snf += 1
        h, u = hermite_normal_form(a)
        if matmul(u, a) != h or abs(determinant(u)) != 1:
            bad_hnf += 1
        k = rng.randint(2, 3)
        gens = [tuple(rng.randint(-3, 3) for _ in range(k)) for _ in range(rng.randint(1, 5))]
        if not any(any(g) for g in gens):
            continue
        c = cone_from_rays(gens, k)
        if not (c.dual.dual.contains_cone(c) and c.contains_cone(c.dual.dual)):
            bad_dual += 1
    return [("snf identities", bad_snf == 0, f"{bad_snf} failures / {trials}"),
            ("hnf identities", bad_hnf == 0, f"{bad_hnf} failures / {trials}"),
            ("double duality", bad_dual == 0, f"{bad_dual} failures")]


def run_selfcheck(bound: int, fmt: str, out) -> int:
    results = check_corpus(bound) + check_kernels()
    ok = all(r[1] for r in results)
    if fmt == "json":
        json.dump({"tool_version": __version__, "passed": ok,
                   "checks": [{"name": n, "pass": p, "detail": d} for n, p, d in results]},
                  out, indent=2)
        out.write("\n")
    else:
        for n, p, d in results:
            out.write(f"{'PASS' if p else 'FAIL'}  {n}: {d}\n")
        out.write("selfcheck " + ("passed" if ok else "FAILED") + "\n")
    return 0 if ok else 1
