"""JSON scene files: schema validation, exact number decoding, encoding."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import jsonschema

from .polyring import MultiPoly, PolyVec, UniPoly
from .trace_gen import Region, Scene, SceneError, SuffixSpec

__all__ = ["SCHEMA", "SceneFormatError", "parse_number", "format_number", "scene_from_json", "scene_to_json", "load_scene", "dump_scene"]

_NUMBER = {"anyOf": [{"type": "string", "pattern": r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$"}, {"type": "integer"}, {"type": "number"}]}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "dimension", "regions", "path"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": 1},
        "dimension": {"type": "integer", "minimum": 1},
        "regions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "terms"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z0-9_]*$"},
                    "terms": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["coeff", "exponents"],
                            "additionalProperties": False,
                            "properties": {
                                "coeff": _NUMBER,
                                "exponents": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                            },
                        },
                    },
                },
            },
        },
        "path": {
            "type": "object",
            "required": ["segments"],
            "additionalProperties": False,
            "properties": {
                "segments": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "array", "minItems": 1, "items": {"type": "array", "items": _NUMBER}},
                }
            },
        },
        "suffix": {
            "type": "object",
            "required": ["kind"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["invariant", "cyclic", "direct"]},
                "reaches_endpoint": {"type": "boolean"},
                "loop_start_segment": {"type": "integer", "minimum": 0},
            },
        },
    },
}


class SceneFormatError(ValueError):
    pass


def parse_number(v, *, accept_floats: bool = False) -> Fraction:
    if isinstance(v, bool):
        raise SceneFormatError(f"not a number: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        if not accept_floats:
            raise SceneFormatError(f"float {v!r} rejected; write it as an exact \"num/den\" string or pass --accept-floats")
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.replace(" ", ""))
        except (ValueError, ZeroDivisionError) as exc:
            raise SceneFormatError(f"bad number {v!r}: {exc}") from None
    raise SceneFormatError(f"not a number: {v!r}")


def format_number(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def scene_from_json(doc: dict, *, accept_floats: bool = False) -> Scene:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SceneFormatError(f"schema violation at {where}: {exc.message}") from None
    n = doc["dimension"]
    num = lambda v: parse_number(v, accept_floats=accept_floats)  # noqa: E731
    regions = []
    for r in doc["regions"]:
        terms: dict[tuple, Fraction] = {}
        for t in r["terms"]:
            e = tuple(t["exponents"])
            if len(e) != n:
                raise SceneFormatError(f"region {r['id']}: exponent tuple {list(e)} has length {len(e)}, expected {n}")
            terms[e] = terms.get(e, 0) + num(t["coeff"])
        regions.append(Region(r["id"], MultiPoly(n, terms)))
    segments = []
    for k, seg in enumerate(doc["path"]["segments"]):
        if len(seg) != n:
            raise SceneFormatError(f"segment {k} has {len(seg)} coordinates, expected {n}")
        segments.append(PolyVec([UniPoly([num(c) for c in comp]) for comp in seg]))
    sx = doc.get("suffix", {"kind": "invariant"})
    suffix = SuffixSpec(sx["kind"], bool(sx.get("reaches_endpoint", False)), sx.get("loop_start_segment", 0))
    return Scene(n, tuple(regions), tuple(segments), suffix)


def scene_to_json(scene: Scene) -> dict:
    regions = []
    for r in scene.regions:
        terms = [
            {"coeff": format_number(c), "exponents": list(e)}
            for e, c in sorted(r.poly.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))
        ]
        regions.append({"id": r.id, "terms": terms})
    segments = [[[format_number(c) for c in comp.coeffs] or ["0"] for comp in seg] for seg in scene.segments]
    suffix: dict[str, Any] = {"kind": scene.suffix.kind}
    if scene.suffix.kind == "direct":
        suffix["reaches_endpoint"] = scene.suffix.reaches_endpoint
    if scene.suffix.kind == "cyclic":
        suffix["loop_start_segment"] = scene.suffix.loop_start
    return {"version": 1, "dimension": scene.dimension, "regions": regions, "path": {"segments": segments}, "suffix": suffix}


def load_scene(path, *, accept_floats: bool = False) -> Scene:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SceneFormatError(f"{path}: invalid JSON: {exc}") from None
    try:
        return scene_from_json(doc, accept_floats=accept_floats)
    except SceneError as exc:
        raise SceneFormatError(str(exc)) from None


def dump_scene(scene: Scene) -> str:
    """Stable, diff-friendly JSON: one line per term and per segment."""
    doc = scene_to_json(scene)
    c = lambda v: json.dumps(v, separators=(", ", ": "))  # noqa: E731
    lines = ["{", ' "version": 1,', f' "dimension": {doc["dimension"]},', ' "regions": [']
    for k, r in enumerate(doc["regions"]):
        lines.append(f'  {{"id": {c(r["id"])}, "terms": [')
        lines.append(",\n".join(f"   {c(term)}" for term in r["terms"]))
        lines.append("  ]}" + ("," if k < len(doc["regions"]) - 1 else ""))
    lines.append(" ],")
    lines.append(' "path": {"segments": [')
    lines.append(",\n".join(f"  {c(seg)}" for seg in doc["path"]["segments"]))
    lines.append(" ]},")
    lines.append(f' "suffix": {c(doc["suffix"])}')
    lines.append("}")
    return "\n".join(line for line in lines if line) + "\n"
