"""Command-line front end: ``orbitoric <command> <file> [--bound N] [--format text|json] [--oracle]``.

Exit status: 0 success, 1 input error, 2 an analysis verdict was Unknown
(``analyze`` only), 3 a ``--oracle`` cross-check disagreed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__, oracles
from .datafile import DatumError, parse_datum
from .divclass import relation_matrix, in_weight_lattice
from .intfeas import DEFAULT_BOUND
from .monoid import member
from .orbits import (SCHEMA_VERSION, AffineHoroDatum, OrbitReport, analyze, class_group_summary,
                     orbit_table, orbits_of, gamma)
from .roots import enumerate_roots

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN, EXIT_ORACLE = 0, 1, 2, 3
COMMANDS = ("classgroup", "roots", "orbits", "analyze", "selfcheck")


# ---------------------------------------------------------------------------
# Payloads (one dict per command; text and JSON both render from it)


def _envelope(command, bound, datum, notes) -> dict:
    return {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "command": command,
            "bound": bound, "datum_kind": datum.kind, "notes": list(notes)}


def classgroup_payload(datum, bound, notes) -> dict:
    out = _envelope("classgroup", bound, datum, notes)
    out["class_group"] = class_group_summary(datum)
    return out


def roots_payload(datum, bound, notes) -> dict:
    out = _envelope("roots", bound, datum, notes)
    enum = enumerate_roots(datum.rays, bound)
    roots = enum.roots
    if isinstance(datum, AffineHoroDatum) and not datum.is_toric:
        cg = datum.class_group
        roots = tuple(r for r in roots if in_weight_lattice(cg, r.e))
        out["notes"].append("roots restricted to the weight lattice")
    labels = datum.ray_labels
    out["roots"] = [{"e": [str(x) for x in r.e], "ray": r.distinguished_ray,
                     "ray_label": labels[r.distinguished_ray]} for r in roots]
    out["complete"] = enum.complete
    out["per_ray_bounded"] = list(enum.per_ray_bounded)
    return out


def orbits_payload(datum, bound, notes) -> dict:
    out = _envelope("orbits", bound, datum, notes)
    out["rays"] = [{"index": i, "ray": [str(x) for x in v], "label": datum.ray_labels[i],
                    "invariant": i in datum.invariant_rays} for i, v in enumerate(datum.rays)]
    out["orbits"] = orbit_table(datum)
    return out


def analyze_payload(datum, bound, notes) -> dict:
    report = analyze(datum, bound)
    report.notes = list(notes) + report.notes
    out = report.to_dict()
    out["command"] = "analyze"
    return out


# ---------------------------------------------------------------------------
# Oracle cross-checks


def _oracle_checks(command, datum, payload, bound) -> list[str]:
    """Return disagreement messages (empty when everything matches)."""
    problems = []
    cg = datum.class_group
    if command in ("classgroup", "analyze"):
        rel = relation_matrix(cg.basis.ray_vectors, cg.weight_lattice_basis)
        free, tors = oracles.quotient_oracle(len(cg.basis), rel)
        if (free, tors) != (cg.group.free_rank, list(cg.group.torsion_invariants)):
            problems.append(f"class group: oracle gives rank {free}, torsion {tors}")
    if command == "roots":
        box = min(bound, 6)
        found = oracles.brute_force_roots(datum.rays, box)
        if isinstance(datum, AffineHoroDatum) and not datum.is_toric:
            found = [(e, r) for e, r in found if in_weight_lattice(cg, e)]
        ours = sorted((tuple(int(x) for x in r["e"]), r["ray"]) for r in payload["roots"]
                      if all(abs(int(x)) <= box for x in r["e"]))
        if ours != found:
            problems.append(f"roots: brute force over [-{box},{box}] disagrees")
    if command == "analyze":
        # Definite membership answers agree with a bounded exhaustive search when found.
        orbs = orbits_of(datum)
        g = cg.group
        gammas = [gamma(datum, o) for o in orbs]
        flat = [[list(x.free_part) + list(x.torsion_part) for x in gm.generators] for gm in gammas]
        for a, ga in enumerate(gammas):
            for b, gb in enumerate(gammas):
                if len(gb.generators) > 4:
                    continue
                for t in ga.generators:
                    target = list(t.free_part) + list(t.torsion_part)
                    hit = oracles.monoid_member_oracle(flat[b], g.torsion_invariants, target, 4)
                    res = member(gb, t, bound)
                    if hit and res.is_infeasible:
                        problems.append(f"membership of {t} in Gamma({orbs[b].id}) disagrees")
    return problems


# ---------------------------------------------------------------------------
# Text rendering


def _table(rows: Sequence[Sequence[str]], header: Sequence[str]) -> list[str]:
    widths = [max(len(str(r[i])) for r in list(rows) + [header]) for i in range(len(header))]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    out = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
    out += [fmt.format(*map(str, r)) for r in rows]
    return out


def _blocks_text(blocks) -> str:
    return " | ".join("{" + ", ".join(b) + "}" for b in blocks)


def render_text(payload: dict) -> str:
    cmd = payload["command"]
    lines = [f"orbitoric {payload['tool_version']}  {cmd}  ({payload['datum_kind']}, "
             f"bound {payload['bound']})"]
    cgs = payload.get("class_group")
    if cgs:
        lines.append(f"{cgs['name']} = {cgs['group']}")
        if cmd == "classgroup":
            inv = ", ".join(cgs["torsion"]) or "none"
            lines.append(f"free rank {cgs['free_rank']}, torsion invariants: {inv}")
            rows = [(c["label"], "(" + ",".join(c["ray"]) + ")", c["class_str"])
                    for c in cgs["class_map"]]
            lines += _table(rows, ("divisor", "ray", "class"))
    if cmd == "roots":
        rows = [("(" + ",".join(r["e"]) + ")", r["ray_label"]) for r in payload["roots"]]
        lines.append(f"{len(rows)} roots; complete enumeration: {'yes' if payload['complete'] else 'no'}")
        lines += _table(rows, ("root e", "distinguished ray"))
    if cmd in ("orbits", "analyze"):
        rows = []
        for o in payload["orbits"]:
            rows.append((o["id"], "{" + ",".join(map(str, o["face_rays"])) + "}",
                         "-" if o["orbit_dim"] is None else o["orbit_dim"],
                         ", ".join(o["d_labels"]) or "-", o["gamma_str"]))
        lines += _table(rows, ("orbit", "face rays", "dim", "D(O)", "Gamma(O)"))
    if cmd == "analyze":
        label = "monoid partition" + ("" if payload["monoid_partition_exact"]
                                      else " (necessary condition only)")
        lines.append(f"{label}: {_blocks_text(payload['monoid_partition'])}")
        if payload["connectivity_partition"] is not None:
            label = "connectivity partition" + ("" if payload["is_toric"] else " (candidate)")
            lines.append(f"{label}: {_blocks_text(payload['connectivity_partition'])}")
        for e in payload["evidence"]:
            w = "asserted" if e["witness"] is None else "root (" + ",".join(e["witness"]) + ")"
            lines.append(f"  {e['smaller']} ~ {e['larger']} via ray {e['ray']}: {w}")
        for k, v in payload["verdicts"].items():
            lines.append(f"{k.replace('_', ' ')}: {v}")
        for a, b, w in payload["violations"]:
            lines.append(f"violation: {a} and {b} share a block but differ at {w}")
    for w in payload.get("warnings", []):
        lines.append(f"warning: {w}")
    for n in payload.get("notes", []):
        lines.append(f"note: {n}")
    for p in payload.get("oracle_disagreements", []):
        lines.append(f"oracle: {p}")
    if "oracle_disagreements" in payload and not payload["oracle_disagreements"]:
        lines.append("oracle: all cross-checks agree")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Entry point

_PAYLOADS = {"classgroup": classgroup_payload, "roots": roots_payload,
             "orbits": orbits_payload, "analyze": analyze_payload}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbitoric", description=(
        "Orbit gluing by Aut^0 on toric and horospherical varieties from combinatorial data."))
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", nargs="?", help="datum file (JSON); optional for selfcheck")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                   help="search bound for feasibility queries (default %(default)s)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--oracle", action="store_true", help="cross-check with brute-force oracles")
    p.add_argument("--version", action="version", version=f"orbitoric {__version__}")
    return p


def run(command: str, path: str | None, bound: int = DEFAULT_BOUND, fmt: str = "text",
        oracle: bool = False, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if bound < 1:
        print("error: --bound must be positive", file=err)
        return EXIT_INPUT
    if command == "selfcheck":
        from .selfcheck import run_selfcheck
        return run_selfcheck(bound, fmt, out)
    if path is None:
        print(f"error: {command} needs a datum file", file=err)
        return EXIT_INPUT
    try:
        datum, notes = parse_datum(path)
    except DatumError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    payload = _PAYLOADS[command](datum, bound, notes)
    status = EXIT_OK
    if command == "analyze" and OrbitReport.from_dict(
            {k: payload[k] for k in OrbitReport.__dataclass_fields__}).has_unknown:
        status = EXIT_UNKNOWN
    if oracle:
        payload["oracle_disagreements"] = _oracle_checks(command, datum, payload, bound)
        if payload["oracle_disagreements"]:
            status = EXIT_ORACLE
    if fmt == "json":
        json.dump(payload, out, indent=2)
        out.write("\n")
    else:
        out.write(render_text(payload) + "\n")
    return status


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(args.command, args.file, args.bound, args.format, args.oracle)


if __name__ == "__main__":
    sys.exit(main())
