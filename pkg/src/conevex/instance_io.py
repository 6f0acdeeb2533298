"""Instance files: line-oriented JSON with exact rationals as strings.

Layout (one top-level key per line, keys in fixed order)::

    {"version": 1,
     "dims": {"X": 1, "Y": 2, "Z": 1, "W": 0},
     "cones": {"Y": [["1", "0"], ["0", "1"]], "Z": [["1"]]},
     "domain": [{"label": "a", "coords": ["0"]}],
     "f": {"a": [["0", "1"]]},
     "g": {"a": [["-1"]]},
     "h": {...},            # optional when W = 0
     "operators": {...},    # optional: {"S": [[...]], "T": [[...]]}
     "multipliers": {...}}  # optional: {"xi": [...], "eta": [...], "zeta": [...]}

Rationals are written ``"p"`` or ``"p/q"`` in lowest terms; floats are
rejected. Serializing a parsed canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .alternative import Multipliers
from .errors import ConevexError, ParseError, ValidationError
from .geometry import cone_from_generators
from .saddle import LinearOperator, OperatorPair
from .setvalued import DomainPoint, FiniteSetMap, ProblemInstance

FORMAT_VERSION = 1
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_KEYS = ("version", "dims", "cones", "domain", "f", "g", "h", "operators", "multipliers")


@dataclass(frozen=True)
class InstanceFile:
    instance: ProblemInstance
    operators: Optional[OperatorPair] = None
    multipliers: Optional[Multipliers] = None


def _rational(s, path: str) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL.match(s):
        raise ParseError(path, f"expected a rational string 'p/q', got {s!r}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise ParseError(path, "zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def _vector(v, path: str, dim: Optional[int] = None) -> tuple:
    if not isinstance(v, list):
        raise ParseError(path, "expected a list of rationals")
    out = tuple(_rational(a, f"{path}[{i}]") for i, a in enumerate(v))
    if dim is not None and len(out) != dim:
        raise ValidationError(f"{path}: expected length {dim}, got {len(out)}")
    return out


def _vectors(vs, path: str, dim: int) -> list:
    if not isinstance(vs, list):
        raise ParseError(path, "expected a list of vectors")
    return [_vector(v, f"{path}[{i}]", dim) for i, v in enumerate(vs)]


def _obj(d, path: str) -> dict:
    if not isinstance(d, dict):
        raise ParseError(path, "expected an object")
    return d


def _map(d, path: str, dim: int) -> FiniteSetMap:
    d = _obj(d, path)
    return FiniteSetMap(dim, {label: _vectors(vs, f"{path}.{label}", dim) for label, vs in d.items()})


def _matrix(m, path: str, rows: int, cols: int) -> LinearOperator:
    if not isinstance(m, list) or len(m) != rows:
        raise ValidationError(f"{path}: expected {rows} rows")
    return LinearOperator(rows, cols, tuple(_vector(r, f"{path}[{i}]", cols) for i, r in enumerate(m)))


def parse_operators(block, inst: ProblemInstance, path: str = "$") -> OperatorPair:
    """An ``{"S": rows, "T": rows}`` block; T may be omitted when dim W = 0."""
    block = _obj(block, path)
    dy = inst.dim_y
    return OperatorPair(
        _matrix(block.get("S"), f"{path}.S", dy, inst.dim_z),
        _matrix(block.get("T", [[] for _ in range(dy)]), f"{path}.T", dy, inst.dim_w),
    )


def parse_instance_file(text: str) -> InstanceFile:
    """Parse full file contents, including optional operator and multiplier blocks."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.pos, e.msg) from None
    data = _obj(data, "$")
    unknown = set(data) - set(_KEYS)
    if unknown:
        raise ParseError("$", f"unknown keys {sorted(unknown)}")
    if data.get("version") != FORMAT_VERSION:
        raise ParseError("$.version", f"unsupported version {data.get('version')!r}")
    for key in ("dims", "cones", "domain", "f", "g"):
        if key not in data:
            raise ParseError("$", f"missing key {key!r}")

    dims = _obj(data["dims"], "$.dims")
    try:
        dx, dy, dz, dw = (dims[k] for k in "XYZW")
    except KeyError as e:
        raise ParseError("$.dims", f"missing dimension {e.args[0]}") from None
    if not all(isinstance(d, int) and not isinstance(d, bool) and d >= 0 for d in (dx, dy, dz, dw)):
        raise ParseError("$.dims", "dimensions must be nonnegative integers")
    if dy == 0:
        raise ValidationError("the objective space needs dimension >= 1")

    cones = _obj(data["cones"], "$.cones")
    try:
        y_cone = cone_from_generators(dy, _vectors(cones["Y"], "$.cones.Y", dy))
        z_cone = cone_from_generators(dz, _vectors(cones["Z"], "$.cones.Z", dz))
        w_cone = None
        if "W" in cones:
            w_cone = cone_from_generators(dw, _vectors(cones["W"], "$.cones.W", dw))
    except KeyError as e:
        raise ParseError("$.cones", f"missing cone {e.args[0]}") from None
    except ParseError:
        raise
    except ConevexError as e:
        raise ValidationError(f"invalid cone: {e}") from None

    if not isinstance(data["domain"], list):
        raise ParseError("$.domain", "expected a list")
    domain = []
    for i, p in enumerate(data["domain"]):
        p = _obj(p, f"$.domain[{i}]")
        if not isinstance(p.get("label"), str):
            raise ParseError(f"$.domain[{i}].label", "expected a string label")
        domain.append(DomainPoint(p["label"], _vector(p.get("coords"), f"$.domain[{i}].coords", dx)))

    try:
        f = _map(data["f"], "$.f", dy)
        g = _map(data["g"], "$.g", dz)
        h = _map(data["h"], "$.h", dw) if "h" in data else None
        inst = ProblemInstance(dx, dy, dz, dw, y_cone, z_cone, tuple(domain), f, g, h, w_cone)
    except (ParseError, ValidationError):
        raise
    except ConevexError as e:
        raise ValidationError(str(e)) from None

    operators = None
    if "operators" in data:
        operators = parse_operators(data["operators"], inst, "$.operators")
    multipliers = None
    if "multipliers" in data:
        m = _obj(data["multipliers"], "$.multipliers")
        multipliers = Multipliers(
            _vector(m.get("xi"), "$.multipliers.xi", dy),
            _vector(m.get("eta"), "$.multipliers.eta", dz),
            _vector(m.get("zeta", []), "$.multipliers.zeta", dw),
        )
    return InstanceFile(inst, operators, multipliers)


def parse_instance(text: str) -> ProblemInstance:
    return parse_instance_file(text).instance


def load_instance_file(path) -> InstanceFile:
    return parse_instance_file(Path(path).read_text())


def _s(v) -> list:
    return [str(a) for a in v]


def _dump(value) -> str:
    return json.dumps(value, separators=(", ", ": "), ensure_ascii=False)


def serialize_instance(inst: ProblemInstance, operators: Optional[OperatorPair] = None,
                       multipliers: Optional[Multipliers] = None) -> str:
    """Canonical text; ``h`` is omitted when dim W = 0."""
    cones = {"Y": [_s(g) for g in inst.y_cone.generators], "Z": [_s(g) for g in inst.z_cone.generators]}
    if inst.w_cone is not None:
        cones["W"] = [_s(g) for g in inst.w_cone.generators]
    entries = [
        ("version", FORMAT_VERSION),
        ("dims", {"X": inst.dim_x, "Y": inst.dim_y, "Z": inst.dim_z, "W": inst.dim_w}),
        ("cones", cones),
        ("domain", [{"label": p.label, "coords": _s(p.coords)} for p in inst.domain]),
        ("f", {x: [_s(y) for y in inst.f[x]] for x in inst.labels}),
        ("g", {x: [_s(z) for z in inst.g[x]] for x in inst.labels}),
    ]
    if inst.dim_w > 0:
        entries.append(("h", {x: [_s(w) for w in inst.h[x]] for x in inst.labels}))
    if operators is not None:
        entries.append(("operators", {"S": [_s(r) for r in operators.S.matrix],
                                      "T": [_s(r) for r in operators.T.matrix]}))
    if multipliers is not None:
        entries.append(("multipliers", multipliers.to_dict()))
    lines = [f"{_dump(k)}: {_dump(v)}" for k, v in entries]
    return "{" + ",\n ".join(lines) + "}\n"


def serialize_instance_file(doc: InstanceFile) -> str:
    return serialize_instance(doc.instance, doc.operators, doc.multipliers)
