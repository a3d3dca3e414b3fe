"""Reading datum files.

A datum file is a JSON object. Integers are written as decimal strings
(plain JSON integers are accepted too). Fields:

``kind``
    ``"affine_toric"``, ``"complete_toric_fan"`` or ``"affine_horospherical"``.
``rank``
    Rank of the lattice ``N``.
``rays``
    Generators of ``sigma`` (affine kinds) or the rays of the fan.
``dual_rays``
    Affine kinds only, instead of ``rays``: generators of the dual cone in ``M``.
``cones``
    Fan only: maximal cones, each a list of ray indices or of ray vectors.
``invariant_rays``
    Horospherical only: rays carrying invariant divisors, as indices into
    ``rays`` or as vectors. May be empty.
``weight_lattice``
    Horospherical only, optional: rows spanning ``Z(P)`` in ``M``. Defaults to ``M``.
``labels``
    Optional divisor labels, one per entry of ``rays``.
``projective_cone``
    Optional flag: the datum is the affine cone over a projective variety.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .divclass import DivisorError, ray_label
from .lattice import primitive_vector
from .orbits import AffineHoroDatum, ToricFanDatum
from .polyhedral import InvalidFanError, PolyhedralError, cone_from_rays, validate_fan

KINDS = ("affine_toric", "complete_toric_fan", "affine_horospherical")
_FIELDS = {
    "affine_toric": {"kind", "rank", "rays", "dual_rays", "labels"},
    "complete_toric_fan": {"kind", "rank", "rays", "cones", "labels"},
    "affine_horospherical": {"kind", "rank", "rays", "dual_rays", "invariant_rays",
                             "weight_lattice", "labels", "projective_cone"},
}


class DatumError(ValueError):
    """A datum file is malformed; ``field`` and ``line`` locate the problem."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field, self.line = field, line
        where = ""
        if field:
            where = f"field {field!r}"
            if line:
                where += f" (line {line})"
            where += ": "
        super().__init__(where + message)


def _line_of(text: str, key: str) -> int | None:
    needle = f'"{key}"'
    for k, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return k
    return None


class _Reader:
    def __init__(self, obj: dict, text: str):
        self.obj, self.text = obj, text

    def fail(self, key: str, message: str):
        raise DatumError(message, key, _line_of(self.text, key))

    def integer(self, key: str, x: Any) -> int:
        if isinstance(x, bool):
            self.fail(key, f"expected an integer, got {x!r}")
        if isinstance(x, int):
            return x
        if isinstance(x, str):
            s = x.strip()
            body = s[1:] if s[:1] in "+-" else s
            if body.isdigit():
                return int(s)
        self.fail(key, f"expected an integer (decimal string), got {x!r}")

    def vector(self, key: str, x: Any, n: int) -> tuple[int, ...]:
        if not isinstance(x, list):
            self.fail(key, f"expected a vector, got {x!r}")
        if len(x) != n:
            self.fail(key, f"vector {x!r} has length {len(x)}, expected {n}")
        return tuple(self.integer(key, y) for y in x)

    def vectors(self, key: str, n: int) -> list[tuple[int, ...]]:
        x = self.obj.get(key)
        if not isinstance(x, list):
            self.fail(key, "expected a list of vectors")
        return [self.vector(key, v, n) for v in x]


def parse_datum_text(text: str, source: str = "<string>"):
    """Parse datum JSON; returns ``(datum, notes)``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatumError(f"{source}: invalid JSON: {exc.msg}", "<file>", exc.lineno) from None
    if not isinstance(obj, dict):
        raise DatumError("top level must be an object", "<file>", 1)
    r = _Reader(obj, text)
    kind = obj.get("kind")
    if kind not in KINDS:
        r.fail("kind", f"must be one of {', '.join(KINDS)}; got {kind!r}")
    unknown = set(obj) - _FIELDS[kind]
    if unknown:
        r.fail(sorted(unknown)[0], f"not a field of {kind} data")
    if "rank" not in obj:
        r.fail("rank", "missing")
    n = r.integer("rank", obj["rank"])
    if n < 1:
        r.fail("rank", "must be positive")
    notes: list[str] = []

    if kind == "complete_toric_fan":
        return _parse_fan(r, n, notes), notes
    return _parse_affine(r, kind, n, notes), notes


def _normalized(r: _Reader, key: str, vecs, notes) -> list[tuple[int, ...]]:
    out = []
    for v in vecs:
        if not any(v):
            r.fail(key, "zero vector is not a ray")
        p = primitive_vector(v)
        if p != v:
            notes.append(f"{key}: {list(v)} normalized to primitive {list(p)}")
        out.append(p)
    return out


def _labels(r: _Reader, count: int) -> list[str] | None:
    labels = r.obj.get("labels")
    if labels is None:
        return None
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        r.fail("labels", "expected a list of strings")
    if len(labels) != count:
        r.fail("labels", f"expected {count} labels, one per ray")
    if len(set(labels)) != len(labels):
        r.fail("labels", "labels must be distinct")
    return labels


def _parse_fan(r: _Reader, n: int, notes) -> ToricFanDatum:
    if "rays" not in r.obj:
        r.fail("rays", "missing")
    rays = _normalized(r, "rays", r.vectors("rays", n), notes)
    if len(set(rays)) != len(rays):
        r.fail("rays", "a ray is listed twice")
    labels = _labels(r, len(rays))
    cones_raw = r.obj.get("cones")
    if not isinstance(cones_raw, list) or not cones_raw:
        r.fail("cones", "expected a nonempty list of cones")
    cones = []
    for c in cones_raw:
        if not isinstance(c, list):
            r.fail("cones", f"expected a list of ray indices or vectors, got {c!r}")
        gens = []
        for x in c:
            if isinstance(x, list):
                gens.append(r.vector("cones", x, n))
            else:
                i = r.integer("cones", x)
                if not 0 <= i < len(rays):
                    r.fail("cones", f"ray index {i} out of range")
                gens.append(rays[i])
        cones.append(cone_from_rays(gens, n))
    try:
        fan = validate_fan(cones)
    except InvalidFanError as exc:
        r.fail("cones", f"invalid fan: {exc}")
    except PolyhedralError as exc:
        r.fail("cones", str(exc))
    missing = [v for v in fan.ray_list if v not in rays]
    if missing:
        r.fail("cones", f"cone rays {[list(v) for v in missing]} are not listed in 'rays'")
    unused = [v for v in rays if v not in fan.ray_list]
    if unused:
        r.fail("rays", f"rays {[list(v) for v in unused]} are not rays of any cone")
    by_vec = dict(zip(rays, labels or [ray_label(v) for v in rays]))
    datum = ToricFanDatum(fan, tuple(by_vec[v] for v in fan.ray_list))
    if not datum.complete:
        notes.append("fan is not complete")
    return datum


def _parse_affine(r: _Reader, kind: str, n: int, notes) -> AffineHoroDatum:
    has_rays, has_dual = "rays" in r.obj, "dual_rays" in r.obj
    if has_rays == has_dual:
        r.fail("rays", "give exactly one of 'rays' or 'dual_rays'")
    if has_rays:
        given = _normalized(r, "rays", r.vectors("rays", n), notes)
        sigma = cone_from_rays(given, n)
        for v in given:
            if v not in sigma.rays:
                notes.append(f"rays: {list(v)} is not extremal and was dropped")
    else:
        dual = cone_from_rays(r.vectors("dual_rays", n), n)
        sigma = dual.dual
        given = list(sigma.rays)
        notes.append("sigma computed from dual_rays: rays " +
                     ", ".join(str(list(v)) for v in sigma.rays))
    labels = _labels(r, len(given))
    if labels is not None:
        by_vec = dict(zip(given, labels))
        labels = [by_vec.get(v, ray_label(v)) for v in sigma.rays]

    if kind == "affine_toric":
        inv = tuple(range(len(sigma.rays)))
        weights = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        projective = False
    else:
        if "invariant_rays" not in r.obj:
            r.fail("invariant_rays", "missing (use [] for no invariant divisors)")
        raw = r.obj["invariant_rays"]
        if not isinstance(raw, list):
            r.fail("invariant_rays", "expected a list")
        idx = []
        for x in raw:
            if isinstance(x, list):
                v = primitive_vector(r.vector("invariant_rays", x, n)) if any(x) else None
            else:
                i = r.integer("invariant_rays", x)
                if not 0 <= i < len(given):
                    r.fail("invariant_rays", f"ray index {i} out of range")
                v = given[i]
            if v is None or v not in sigma.rays:
                r.fail("invariant_rays", f"{x!r} is not an extremal ray of sigma")
            idx.append(sigma.rays.index(v))
        if len(set(idx)) != len(idx):
            r.fail("invariant_rays", "a ray is listed twice")
        inv = tuple(sorted(idx))
        if "weight_lattice" in r.obj:
            weights = tuple(r.vectors("weight_lattice", n))
        else:
            weights = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        projective = r.obj.get("projective_cone", False)
        if not isinstance(projective, bool):
            r.fail("projective_cone", "expected true or false")
    try:
        datum = AffineHoroDatum(sigma, inv, weights, projective,
                                tuple(labels) if labels else None)
        datum.class_group  # validates the weight lattice
    except (DivisorError, ValueError) as exc:
        r.fail("weight_lattice" if "weight" in str(exc) else "rays", str(exc))
    if kind == "affine_horospherical" and datum.is_toric:
        notes.append("every ray is invariant and the weight lattice is M: the datum is toric")
    return datum


def parse_datum(path: str | Path):
    """Read and validate a datum file; returns ``(datum, notes)``."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DatumError(f"cannot read {path}: {exc.strerror}") from None
    return parse_datum_text(text, str(path))
