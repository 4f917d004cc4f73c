"""
Input / Output Formats
======================
pydantic schemas for every JSON input (complexes, 1-D sets, constructible
functions, map descriptors, incidences, scenes, models, Presburger sets) and
the converters between them and the domain objects. Rationals travel as
"p/q" strings (plain integers are accepted on input); floats are rejected.

Every *_to_json output parses back through the matching *_from_json into an
equal value.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, ValidationError

from src.constructible import (
    Carrier, ConstructibleFn, DefinableMapDesc, MapKind, Strip, check_plane_disjoint,
    const_map, finite_map, line_inclusion, proj_x, weighted_complex,
)
from src.errors import RejectedInput
from src.geometry import (
    CirclePoint, CircleSet, Line2D, LinePoint, LineSet1D, OpenArc, OpenEdge, OpenInterval,
    OpenTriangle, PlaneComplex, Vertex, VertexPool, cell_indices, point2, rat, render_rat,
)
from src.incidence import FiniteIncidence, incidence
from src.models import FiniteModel, ModelMap, freeze
from src.presburger import PresburgerSet, Progression, pres_normalize
from src.radon import PolygonScene
from src.semiring import EulerDim

Rational = Union[StrictInt, StrictStr]
Label = Union[StrictStr, StrictInt]


class _Schema(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class CellSchema(_Schema):
    t: Literal["v", "e", "f"]
    i: StrictInt
    j: Optional[StrictInt] = None
    k: Optional[StrictInt] = None


class ComplexSchema(_Schema):
    vertices: List[Tuple[Rational, Rational]] = []
    cells: List[CellSchema] = []


class LineSchema(_Schema):
    base: Tuple[Rational, Rational]
    dir: Tuple[StrictInt, StrictInt]


class PieceSchema(_Schema):
    t: Literal["pt", "iv", "dir", "arc", "v", "e", "f", "strip"]
    q: Optional[Rational] = None
    a: Optional[Rational] = None
    b: Optional[Rational] = None
    d: Optional[Tuple[StrictInt, StrictInt]] = None
    start: Optional[Tuple[StrictInt, StrictInt]] = Field(default=None, alias="from")
    end: Optional[Tuple[StrictInt, StrictInt]] = Field(default=None, alias="to")
    i: Optional[StrictInt] = None
    j: Optional[StrictInt] = None
    k: Optional[StrictInt] = None
    over: Optional["PieceSchema"] = None


class SetSchema(_Schema):
    carrier: Literal["line", "circle"] = "line"
    pieces: List[PieceSchema] = []


class PartSchema(_Schema):
    piece: Union[PieceSchema, Label]
    value: Tuple[StrictInt, Union[StrictInt, StrictStr]]


class FunctionSchema(_Schema):
    carrier: Literal["finite", "line", "circle", "plane"]
    vertices: List[Tuple[Rational, Rational]] = []
    parts: List[PartSchema] = []


class MapSchema(_Schema):
    kind: Literal["finite", "proj-x", "line-incl", "const"]
    table: Optional[Dict[str, Label]] = None
    codomain: Optional[List[Label]] = None
    line: Optional[LineSchema] = None
    domain: Optional[Literal["finite", "line", "circle", "plane"]] = None
    labels: Optional[List[Label]] = None


class IncidenceSchema(_Schema):
    X: List[Label]
    Y: List[Label]
    S: List[Tuple[Label, Label]] = []


class SceneSchema(ComplexSchema):
    samples: List[Tuple[Rational, Rational]] = []
    weights: Optional[List[Tuple[StrictInt, Union[StrictInt, StrictStr]]]] = None
    name: str = "scene"


class ModelMapSchema(_Schema):
    dom: str
    cod: str
    table: Union[Dict[str, Any], List[Tuple[Any, Any]]]


class ModelSchema(_Schema):
    universe: List[Label]
    subsets: Dict[str, List[Any]] = {}
    maps: Dict[str, ModelMapSchema] = {}


class ProgSchema(_Schema):
    r: StrictInt
    d: StrictInt
    lo: Optional[StrictInt] = None
    hi: Optional[StrictInt] = None


class PresburgerSchema(_Schema):
    points: List[StrictInt] = []
    progs: List[ProgSchema] = []


class PresburgerOpSchema(_Schema):
    a: PresburgerSchema
    b: PresburgerSchema
    op: Literal["union", "intersect", "difference"]


PieceSchema.model_rebuild()
PartSchema.model_rebuild()


def _validate(schema, raw: Any):
    try:
        return schema.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "input"
        raise RejectedInput(f"invalid {schema.__name__.replace('Schema', '').lower()} at {where}: {first['msg']}")


def load_json(source: Union[str, Path]) -> Any:
    """Parse inline JSON text, or read a JSON file."""
    text = str(source)
    if text.lstrip().startswith(("{", "[")):
        raw = text
    else:
        path = Path(source)
        if not path.exists():
            raise RejectedInput(f"no such file: {path}")
        raw = path.read_text(encoding="utf-8")
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise RejectedInput(f"malformed JSON: {exc}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


# ── Values ───────────────────────────────────────────────────────────────────

def euler_from_json(raw) -> EulerDim:
    return EulerDim.from_json(list(raw))


def euler_to_json(v: EulerDim) -> list:
    return v.to_json()


def _rat_json(q) -> str:
    return render_rat(q)


def _point_json(p) -> List[str]:
    return [_rat_json(p[0]), _rat_json(p[1])]


# ── Complexes and 1-D sets ───────────────────────────────────────────────────

def _cell(c: CellSchema, n: int):
    need = {"v": ("i",), "e": ("i", "j"), "f": ("i", "j", "k")}[c.t]
    if any(getattr(c, name) is None for name in need):
        raise RejectedInput(f"cell {n}: type {c.t!r} needs indices {', '.join(need)}")
    if c.t == "v":
        return Vertex(c.i)
    if c.t == "e":
        return OpenEdge(c.i, c.j)
    return OpenTriangle(c.i, c.j, c.k)


def _complex(s: ComplexSchema) -> PlaneComplex:
    return PlaneComplex(tuple(point2(*v) for v in s.vertices),
                        tuple(_cell(c, n) for n, c in enumerate(s.cells)))


def complex_from_json(raw) -> PlaneComplex:
    return _complex(_validate(ComplexSchema, raw))


def complex_to_json(c: PlaneComplex) -> Dict:
    cells = []
    for cell in c.cells:
        idx = cell_indices(cell)
        t = "vef"[len(idx) - 1]
        cells.append(dict(zip(("t", "i", "j", "k"), (t,) + idx)))
    return {"vertices": [_point_json(v) for v in c.vertices], "cells": cells}


def _opt_rat(v) -> Optional[Fraction]:
    return None if v is None else rat(v)


def _line_piece(p: PieceSchema):
    if p.t == "pt":
        if p.q is None:
            raise RejectedInput("point piece needs 'q'")
        return LinePoint(rat(p.q))
    if p.t == "iv":
        return OpenInterval(_opt_rat(p.a), _opt_rat(p.b))
    raise RejectedInput(f"piece type {p.t!r} is not a line piece")


def _circle_piece(p: PieceSchema):
    if p.t == "dir" and p.d is not None:
        return CirclePoint(tuple(p.d))
    if p.t == "arc" and p.start is not None and p.end is not None:
        return OpenArc(tuple(p.start), tuple(p.end))
    raise RejectedInput(f"piece type {p.t!r} is not a circle piece (dir needs 'd', arc needs 'from' and 'to')")


def set_from_json(raw) -> Union[LineSet1D, CircleSet]:
    s = _validate(SetSchema, raw)
    if s.carrier == "line":
        return LineSet1D.from_pieces(_line_piece(p) for p in s.pieces)
    return CircleSet(tuple(_circle_piece(p) for p in s.pieces))


def _line_piece_json(p) -> Dict:
    if isinstance(p, LinePoint):
        return {"t": "pt", "q": _rat_json(p.q)}
    out: Dict[str, Any] = {"t": "iv"}
    if p.a is not None:
        out["a"] = _rat_json(p.a)
    if p.b is not None:
        out["b"] = _rat_json(p.b)
    return out


def _circle_piece_json(p) -> Dict:
    if isinstance(p, CirclePoint):
        return {"t": "dir", "d": list(p.d)}
    return {"t": "arc", "from": list(p.start), "to": list(p.end)}


def set_to_json(s: Union[LineSet1D, CircleSet]) -> Dict:
    if isinstance(s, LineSet1D):
        return {"carrier": "line", "pieces": [_line_piece_json(p) for p in s.pieces]}
    return {"carrier": "circle", "pieces": [_circle_piece_json(p) for p in s.pieces]}


def line_from_json(raw) -> Line2D:
    s = _validate(LineSchema, raw)
    return Line2D(point2(*s.base), tuple(s.dir))


def line_to_json(l: Line2D) -> Dict:
    return {"base": _point_json(l.base), "dir": list(l.dir)}


# ── Constructible functions ──────────────────────────────────────────────────

def _plane_piece(p: PieceSchema, vertices: List):
    if p.t == "strip":
        if p.over is None:
            raise RejectedInput("strip piece needs 'over'")
        return Strip(_line_piece(p.over))
    if p.t not in ("v", "e", "f"):
        raise RejectedInput(f"piece type {p.t!r} is not a planar piece")
    cell = _cell(CellSchema(t=p.t, i=p.i if p.i is not None else -1, j=p.j, k=p.k), 0)
    idx = cell_indices(cell)
    if any(not 0 <= i < len(vertices) for i in idx):
        raise RejectedInput("planar piece references a missing vertex")
    return tuple(vertices[i] for i in idx)


def fn_from_json(raw) -> ConstructibleFn:
    s = _validate(FunctionSchema, raw)
    carrier = Carrier(s.carrier)
    vertices = [point2(*v) for v in s.vertices]
    parts = []
    for part in s.parts:
        value = euler_from_json(part.value)
        piece = part.piece
        if carrier is Carrier.FINITE:
            if isinstance(piece, PieceSchema):
                raise RejectedInput("finite functions take plain labels as pieces")
            parts.append((piece, value))
            continue
        if not isinstance(piece, PieceSchema):
            raise RejectedInput(f"{carrier.value} pieces must be objects with a 't' field")
        if carrier is Carrier.LINE:
            parts.append((_line_piece(piece), value))
        elif carrier is Carrier.CIRCLE:
            parts.append((_circle_piece(piece), value))
        else:
            parts.append((_plane_piece(piece, vertices), value))
    return check_plane_disjoint(ConstructibleFn(carrier, tuple(parts)))


def fn_to_json(f: ConstructibleFn) -> Dict:
    out: Dict[str, Any] = {"carrier": f.carrier.value}
    parts = []
    if f.carrier is Carrier.PLANE:
        pool = VertexPool()
        for piece, v in f.parts:
            if isinstance(piece, Strip):
                js = {"t": "strip", "over": _line_piece_json(piece.over)}
            else:
                js = dict(zip(("t", "i", "j", "k"), ("vef"[len(piece) - 1],) + tuple(pool.add(p) for p in piece)))
            parts.append({"piece": js, "value": v.to_json()})
        out["vertices"] = [_point_json(p) for p in pool.vertices]
    else:
        for piece, v in f.parts:
            if f.carrier is Carrier.FINITE:
                js = piece
            elif f.carrier is Carrier.LINE:
                js = _line_piece_json(piece)
            else:
                js = _circle_piece_json(piece)
            parts.append({"piece": js, "value": v.to_json()})
    out["parts"] = parts
    return out


def _table_key(key: str) -> Label:
    # object keys are always strings; integer labels travel in decimal form
    try:
        n = int(key)
    except ValueError:
        return key
    return n if str(n) == key else key


def _encode_key(label) -> str:
    key = str(label)
    if isinstance(label, str) and _table_key(key) != label:
        raise RejectedInput(f"string label {label!r} reads back as an integer; rename it")
    return key


def map_from_json(raw) -> DefinableMapDesc:
    s = _validate(MapSchema, raw)
    kind = MapKind(s.kind)
    if kind is MapKind.FINITE:
        if s.table is None:
            raise RejectedInput("finite map needs a 'table'")
        return finite_map({_table_key(k): y for k, y in s.table.items()}, codomain=s.codomain)
    if kind is MapKind.PROJ_X:
        return proj_x()
    if kind is MapKind.LINE_INCL:
        if s.line is None:
            raise RejectedInput("line-incl map needs a 'line'")
        return line_inclusion(Line2D(point2(*s.line.base), tuple(s.line.dir)))
    return const_map(None if s.domain is None else Carrier(s.domain), s.labels or ())


def map_to_json(m: DefinableMapDesc) -> Dict:
    out: Dict[str, Any] = {"kind": m.kind.value}
    if m.kind is MapKind.FINITE:
        out["table"] = {_encode_key(x): y for x, y in m.table}
        if m.codomain is not None:
            out["codomain"] = list(m.codomain)
    elif m.kind is MapKind.LINE_INCL:
        out["line"] = line_to_json(m.line)
    elif m.kind is MapKind.CONST:
        if m.domain is not None:
            out["domain"] = m.domain.value
        if m.domain_labels:
            out["labels"] = list(m.domain_labels)
    return out


# ── Incidences, scenes, models, Presburger sets ──────────────────────────────

def incidence_from_json(raw) -> FiniteIncidence:
    s = _validate(IncidenceSchema, raw)
    return incidence(s.X, s.Y, s.S)


def incidence_to_json(inc: FiniteIncidence) -> Dict:
    return {"X": list(inc.X), "Y": list(inc.Y), "S": [list(p) for p in inc.pairs()]}


def scene_from_json(raw) -> PolygonScene:
    s = _validate(SceneSchema, raw)
    c = _complex(s)
    weights = None
    if s.weights is not None:
        weights = weighted_complex(c, [euler_from_json(w) for w in s.weights])
    return PolygonScene(c, weights, tuple(point2(*p) for p in s.samples), s.name)


def model_from_json(raw) -> FiniteModel:
    s = _validate(ModelSchema, raw)
    maps = {}
    for name, m in s.maps.items():
        table = m.table.items() if isinstance(m.table, dict) else m.table
        maps[name] = ModelMap(m.dom, m.cod, tuple((freeze(x), freeze(y)) for x, y in table))
    return FiniteModel(tuple(s.universe), {k: frozenset(freeze(e) for e in v) for k, v in s.subsets.items()}, maps)


def presburger_from_json(raw) -> PresburgerSet:
    s = _validate(PresburgerSchema, raw)
    return pres_normalize(list(s.points) + [Progression(p.r, p.d, p.lo, p.hi) for p in s.progs])


def presburger_op_from_json(raw) -> Tuple[PresburgerSet, PresburgerSet, str]:
    s = _validate(PresburgerOpSchema, raw)
    return (presburger_from_json(s.a.model_dump()), presburger_from_json(s.b.model_dump()), s.op)


def presburger_to_json(a: PresburgerSet) -> Dict:
    return {"points": list(a.points),
            "progs": [{"r": p.r, "d": p.d, "lo": p.lo, "hi": p.hi} for p in a.progs]}
