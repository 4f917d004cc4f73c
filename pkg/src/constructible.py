"""
Constructible Functions
=======================
A-valued functions with finite image over four carriers:

  finite  labelled points (counting measure)
  line    points and open intervals of R, rays allowed
  circle  points and open arcs of the direction circle RP^1
  plane   compact open cells (vertices, open edges, open triangles), or
          vertical strips pi^-1(P) produced by pulling back along proj-x

A function is stored sparsely as (piece, value) parts with pairwise disjoint
pieces; zero values are never stored. Sums, products and equality go through
a common refinement of the partitions, and the integral is
sum(value * mu(piece)).
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.axioms import SemiringSpec
from src.config import CHECK_CONSTANCY
from src.errors import IdentityFailure, RejectedInput, UnsupportedCombination
from src.geometry import (
    CirclePoint, CircleSet, Line2D, LinePoint, LineSet1D, OpenArc, OpenInterval, PlaneComplex,
    Simplex, check_disjoint, circle_atoms, circle_breakpoints, circle_piece_key, direction,
    intersect_line_simplex, is_canonical_direction, line_atoms, line_breakpoints, line_piece_key,
    mu_piece, orient, point2, point_in_simplex, rat, refine_vertical_simplices, render_rat, simplex,
    simplices_meet,
)
from src.overlay import overlay_atoms
from src.semiring import EulerDim, a_add, a_mul, a_sum

POINT_LABEL = "pt"
LINE_CLASS = EulerDim(-1, 1)   # mu of an open interval or of R


class Carrier(str, Enum):
    FINITE = "finite"
    LINE = "line"
    CIRCLE = "circle"
    PLANE = "plane"


@dataclass(frozen=True)
class Strip:
    """Vertical strip {(x, y) : x in over}, unbounded in y."""
    over: Any   # LinePoint | OpenInterval

    @property
    def dim(self) -> int:
        return self.over.dim + 1

    def contains(self, p) -> bool:
        return self.over.contains(p[0])

    def sample(self):
        return (self.over.sample(), Fraction(0))


# ── Pieces ───────────────────────────────────────────────────────────────────

def label_key(label) -> Tuple[str, str]:
    return (type(label).__name__, str(label))


def _is_simplex(piece) -> bool:
    return (isinstance(piece, tuple) and 1 <= len(piece) <= 3
            and all(isinstance(p, tuple) and len(p) == 2 for p in piece))


def _check_piece(carrier: Carrier, piece):
    if carrier is Carrier.FINITE:
        if not isinstance(piece, Hashable):
            raise RejectedInput(f"finite labels must be hashable, got {piece!r}")
        return piece
    if carrier is Carrier.LINE and isinstance(piece, (LinePoint, OpenInterval)):
        return piece
    if carrier is Carrier.CIRCLE and isinstance(piece, (CirclePoint, OpenArc)):
        return piece
    if carrier is Carrier.PLANE:
        if isinstance(piece, Strip) and isinstance(piece.over, (LinePoint, OpenInterval)):
            return piece
        if _is_simplex(piece):
            s = simplex(point2(*p) for p in piece)
            if len(set(s)) != len(s) or (len(s) == 3 and orient(*s) == 0):
                raise RejectedInput(f"degenerate cell {render_piece(carrier, s)}")
            return s
    raise RejectedInput(f"{piece!r} is not a piece of the {carrier.value} carrier")


def _piece_key(carrier: Carrier, piece):
    if carrier is Carrier.FINITE:
        return label_key(piece)
    if carrier is Carrier.LINE:
        return line_piece_key(piece)
    if carrier is Carrier.CIRCLE:
        return circle_piece_key(piece)
    if isinstance(piece, Strip):
        return (0, line_piece_key(piece.over))
    return (1, len(piece), piece)


def piece_contains(carrier: Carrier, piece, p) -> bool:
    if carrier is Carrier.FINITE:
        return piece == p
    if carrier is Carrier.PLANE and not isinstance(piece, Strip):
        return point_in_simplex(p, piece)
    return piece.contains(p)


def piece_mu(carrier: Carrier, piece) -> EulerDim:
    if carrier is Carrier.FINITE:
        return EulerDim.one()
    if carrier is Carrier.PLANE:
        if isinstance(piece, Strip):
            return a_mul(mu_piece(piece.over), LINE_CLASS)
        d = len(piece) - 1
        return EulerDim((-1) ** d, d)
    return mu_piece(piece)


def canonical_point(carrier: Carrier, p):
    """Bring a user-supplied point into the exact form the carrier compares with."""
    if carrier is Carrier.LINE:
        return rat(p)
    if carrier is Carrier.PLANE:
        return point2(*p)
    if carrier is Carrier.CIRCLE:
        return tuple(p) if is_canonical_direction(tuple(p)) else direction(*p)
    return p


# ── ConstructibleFn ──────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class ConstructibleFn:
    carrier: Carrier
    parts: Tuple[Tuple[Any, EulerDim], ...] = ()

    def __post_init__(self):
        carrier = Carrier(self.carrier)
        parts = []
        for piece, value in self.parts:
            if not isinstance(value, EulerDim):
                raise RejectedInput(f"values must be EulerDim, got {value!r}")
            if not value.is_zero:
                parts.append((_check_piece(carrier, piece), value))
        parts.sort(key=lambda pv: _piece_key(carrier, pv[0]))
        pieces = [p for p, _ in parts]
        if carrier is Carrier.FINITE and len(set(pieces)) != len(pieces):
            raise RejectedInput("finite labels must be distinct")
        if carrier is Carrier.LINE:
            LineSet1D(tuple(pieces))
        if carrier is Carrier.CIRCLE:
            CircleSet(tuple(pieces))
        if carrier is Carrier.PLANE:
            strips = [p for p in pieces if isinstance(p, Strip)]
            if strips and len(strips) != len(pieces):
                raise RejectedInput("a planar function holds either compact cells or vertical strips, not both")
            LineSet1D(tuple(s.over for s in strips))
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "parts", tuple(parts))

    @property
    def is_zero(self) -> bool:
        return not self.parts

    @property
    def plane_kind(self) -> str:
        """'empty', 'strips' or 'cells'."""
        if not self.parts:
            return "empty"
        return "strips" if isinstance(self.parts[0][0], Strip) else "cells"

    def pieces(self) -> List[Any]:
        return [p for p, _ in self.parts]

    def __call__(self, p) -> EulerDim:
        return cf_eval(self, p)

    def __add__(self, other: "ConstructibleFn") -> "ConstructibleFn":
        return cf_add(self, other)

    def __mul__(self, other: "ConstructibleFn") -> "ConstructibleFn":
        return cf_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstructibleFn) or other.carrier is not self.carrier:
            return False
        return first_difference(self, other) is None

    def __repr__(self) -> str:
        return f"ConstructibleFn({render_fn(self)})"


def check_plane_disjoint(f: ConstructibleFn) -> ConstructibleFn:
    """Exact pairwise disjointness of planar cells; the constructor only checks strips."""
    if f.carrier is Carrier.PLANE and f.plane_kind == "cells":
        cells = f.pieces()
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                if simplices_meet(cells[i], cells[j]):
                    raise RejectedInput(f"cells {i} and {j} overlap")
    return f


# ── Constructors ─────────────────────────────────────────────────────────────

def finite_fn(values: Mapping[Hashable, EulerDim]) -> ConstructibleFn:
    return ConstructibleFn(Carrier.FINITE, tuple(values.items()))


def point_fn(value: EulerDim) -> ConstructibleFn:
    return finite_fn({POINT_LABEL: value})


def indicator_finite(labels: Iterable[Hashable], value: EulerDim = EulerDim.one()) -> ConstructibleFn:
    return finite_fn({x: value for x in labels})


def indicator_line(s: LineSet1D, value: EulerDim = EulerDim.one()) -> ConstructibleFn:
    return ConstructibleFn(Carrier.LINE, tuple((p, value) for p in s.pieces))


def indicator_circle(s: CircleSet, value: EulerDim = EulerDim.one()) -> ConstructibleFn:
    return ConstructibleFn(Carrier.CIRCLE, tuple((p, value) for p in s.pieces))


def indicator_complex(c: PlaneComplex, value: EulerDim = EulerDim.one()) -> ConstructibleFn:
    return weighted_complex(c, [value] * len(c.cells))


def weighted_complex(c: PlaneComplex, values: Sequence[EulerDim]) -> ConstructibleFn:
    if len(values) != len(c.cells):
        raise RejectedInput(f"{len(values)} weights for {len(c.cells)} cells")
    overlap = check_disjoint(c)
    if overlap:
        raise RejectedInput(f"cells {overlap[0]} and {overlap[1]} overlap")
    return ConstructibleFn(Carrier.PLANE, tuple(zip(c.simplices(), values)))


def constant_fn(carrier: Carrier, value: EulerDim,
                labels: Iterable[Hashable] = ()) -> ConstructibleFn:
    carrier = Carrier(carrier)
    if carrier is Carrier.FINITE:
        return indicator_finite(labels, value)
    if carrier is Carrier.LINE:
        return ConstructibleFn(carrier, ((OpenInterval(None, None), value),))
    if carrier is Carrier.CIRCLE:
        return indicator_circle(CircleSet.full(), value)
    return ConstructibleFn(carrier, ((Strip(OpenInterval(None, None)), value),))


# ── Evaluation, common refinement, semiring operations ──────────────────────

def cf_eval(f: ConstructibleFn, p) -> EulerDim:
    p = canonical_point(f.carrier, p)
    for piece, value in f.parts:
        if piece_contains(f.carrier, piece, p):
            return value
    return EulerDim.zero()


def _same_carrier(f: ConstructibleFn, g: ConstructibleFn):
    if f.carrier is not g.carrier:
        raise RejectedInput(f"carrier mismatch: {f.carrier.value} vs {g.carrier.value}")


def _mixed(f: ConstructibleFn, g: ConstructibleFn) -> bool:
    kinds = {f.plane_kind, g.plane_kind} - {"empty"}
    return f.carrier is Carrier.PLANE and len(kinds) == 2


def _common_atoms(carrier: Carrier, fns: Sequence[ConstructibleFn]) -> List[Tuple[Tuple[Any, ...], Any]]:
    """Atoms of a common refinement, each with one exact sample point."""
    if carrier is Carrier.FINITE:
        labels = sorted({x for f in fns for x in f.pieces()}, key=label_key)
        return [((x,), x) for x in labels]
    if carrier is Carrier.LINE:
        bps = line_breakpoints(p for f in fns for p in f.pieces())
        return [((a,), a.sample()) for a in line_atoms(bps)]
    if carrier is Carrier.CIRCLE:
        bps = circle_breakpoints(p for f in fns for p in f.pieces())
        return [((a,), a.sample()) for a in circle_atoms(bps)]
    if any(f.plane_kind == "strips" for f in fns):
        bps = line_breakpoints(p.over for f in fns for p in f.pieces())
        return [((Strip(a),), Strip(a).sample()) for a in line_atoms(bps)]
    return [(a.cells, a.sample) for a in overlay_atoms([f.pieces() for f in fns])]


def _combine(f: ConstructibleFn, g: ConstructibleFn,
             op: Callable[[EulerDim, EulerDim], EulerDim], additive: bool) -> ConstructibleFn:
    _same_carrier(f, g)
    if _mixed(f, g):
        return _combine_strips_and_cells(f, g, op, additive)
    parts = []
    for pieces, sample in _common_atoms(f.carrier, (f, g)):
        value = op(cf_eval(f, sample), cf_eval(g, sample))
        if not value.is_zero:
            parts.extend((p, value) for p in pieces)
    return ConstructibleFn(f.carrier, tuple(parts))


def _centroid(s: Simplex):
    n = len(s)
    return (sum(p[0] for p in s) / n, sum(p[1] for p in s) / n)


def _combine_strips_and_cells(f, g, op, additive: bool) -> ConstructibleFn:
    if additive:
        raise UnsupportedCombination(
            "adding a vertical-strip function to a compact planar function gives an unbounded cell; "
            "supported planar sums: cells + cells, strips + strips")
    cells_first = f.plane_kind == "cells"
    cells, strips = (f, g) if cells_first else (g, f)
    cuts = line_breakpoints(s.over for s in strips.pieces())
    parts = []
    for cell, v in cells.parts:
        for piece in refine_vertical_simplices([cell], cuts):
            w = cf_eval(strips, _centroid(piece))
            value = op(v, w) if cells_first else op(w, v)
            if not value.is_zero:
                parts.append((piece, value))
    return ConstructibleFn(Carrier.PLANE, tuple(parts))


def cf_add(f: ConstructibleFn, g: ConstructibleFn) -> ConstructibleFn:
    return _combine(f, g, a_add, additive=True)


def cf_mul(f: ConstructibleFn, g: ConstructibleFn) -> ConstructibleFn:
    return _combine(f, g, a_mul, additive=False)


def cf_scale(c: EulerDim, f: ConstructibleFn) -> ConstructibleFn:
    return ConstructibleFn(f.carrier, tuple((p, a_mul(c, v)) for p, v in f.parts))


SEMIRING_LINE = SemiringSpec("C(line)", ConstructibleFn(Carrier.LINE),
                             constant_fn(Carrier.LINE, EulerDim.one()), cf_add, cf_mul)


def first_difference(f: ConstructibleFn, g: ConstructibleFn) -> Optional[Tuple[Any, EulerDim, EulerDim]]:
    """A sample point where f and g differ, with both values; None when equal."""
    _same_carrier(f, g)
    if _mixed(f, g):
        strips = f if f.plane_kind == "strips" else g
        top = max(p[1] for c in (g if strips is f else f).pieces() for p in c)
        piece = strips.parts[0][0]
        witness = (piece.over.sample(), top + 1)
        return witness, cf_eval(f, witness), cf_eval(g, witness)
    for _, sample in _common_atoms(f.carrier, (f, g)):
        vf, vg = cf_eval(f, sample), cf_eval(g, sample)
        if vf != vg:
            return sample, vf, vg
    return None


def same_function(f: ConstructibleFn, g: ConstructibleFn) -> bool:
    return f == g


def cf_integrate(f: ConstructibleFn) -> EulerDim:
    return a_sum(a_mul(v, piece_mu(f.carrier, p)) for p, v in f.parts)


def cf_refine(f: ConstructibleFn, cuts: Iterable) -> ConstructibleFn:
    """Same function on a finer partition: lines and strips split at points,
    circles at directions, planar cells along vertical lines x = cut."""
    cuts = list(cuts)
    if f.carrier is Carrier.FINITE or not cuts:
        return f
    if f.carrier is Carrier.LINE or f.plane_kind == "strips":
        over = [p.over for p in f.pieces()] if f.carrier is Carrier.PLANE else f.pieces()
        bps = set(line_breakpoints(over)) | {rat(c) for c in cuts}
        atoms = line_atoms(bps)
        if f.carrier is Carrier.PLANE:
            atoms = [Strip(a) for a in atoms]
        return _restrict_atoms(f, atoms)
    if f.carrier is Carrier.CIRCLE:
        bps = set(circle_breakpoints(f.pieces())) | {canonical_point(Carrier.CIRCLE, c) for c in cuts}
        return _restrict_atoms(f, circle_atoms(bps))
    parts = [(piece, v) for cell, v in f.parts
             for piece in refine_vertical_simplices([cell], cuts)]
    return ConstructibleFn(Carrier.PLANE, tuple(parts))


def _restrict_atoms(f: ConstructibleFn, atoms) -> ConstructibleFn:
    parts = []
    for atom in atoms:
        v = cf_eval(f, atom.sample())
        if not v.is_zero:
            parts.append((atom, v))
    return ConstructibleFn(f.carrier, tuple(parts))


# ── Definable maps ───────────────────────────────────────────────────────────

class MapKind(str, Enum):
    FINITE = "finite"
    PROJ_X = "proj-x"
    LINE_INCL = "line-incl"
    CONST = "const"


SUPPORTED_MAPS = ("finite (finite -> finite), proj-x (plane -> line), "
                  "line-incl (line -> plane), const (any carrier -> point)")

_ENDPOINTS = {
    MapKind.FINITE: (Carrier.FINITE, Carrier.FINITE),
    MapKind.PROJ_X: (Carrier.PLANE, Carrier.LINE),
    MapKind.LINE_INCL: (Carrier.LINE, Carrier.PLANE),
}


@dataclass(frozen=True)
class DefinableMapDesc:
    kind: MapKind
    table: Tuple[Tuple[Hashable, Hashable], ...] = ()
    codomain: Optional[Tuple[Hashable, ...]] = None
    line: Optional[Line2D] = None
    domain: Optional[Carrier] = None          # const maps: None means "the argument's carrier"
    domain_labels: Tuple[Hashable, ...] = ()  # const maps on a finite carrier

    def __post_init__(self):
        object.__setattr__(self, "kind", MapKind(self.kind))
        if self.domain is not None:
            object.__setattr__(self, "domain", Carrier(self.domain))
        if self.kind is MapKind.FINITE:
            keys = [x for x, _ in self.table]
            if len(set(keys)) != len(keys):
                raise RejectedInput("finite map table lists a domain label twice")
            if self.codomain is not None:
                missing = [y for _, y in self.table if y not in set(self.codomain)]
                if missing:
                    raise RejectedInput(f"image {missing[0]!r} is outside the codomain")
        if self.kind is MapKind.LINE_INCL and self.line is None:
            raise RejectedInput("line-incl map needs a line")

    @property
    def mapping(self) -> Dict[Hashable, Hashable]:
        return dict(self.table)

    @property
    def source(self) -> Optional[Carrier]:
        if self.kind is MapKind.CONST:
            return self.domain
        return _ENDPOINTS[self.kind][0]

    @property
    def target(self) -> Carrier:
        if self.kind is MapKind.CONST:
            return Carrier.FINITE
        return _ENDPOINTS[self.kind][1]


def finite_map(table: Mapping[Hashable, Hashable],
               codomain: Optional[Iterable[Hashable]] = None) -> DefinableMapDesc:
    cod = None if codomain is None else tuple(codomain)
    return DefinableMapDesc(MapKind.FINITE, tuple(table.items()), codomain=cod)


def proj_x() -> DefinableMapDesc:
    return DefinableMapDesc(MapKind.PROJ_X)


def line_inclusion(line: Line2D) -> DefinableMapDesc:
    return DefinableMapDesc(MapKind.LINE_INCL, line=line)


def const_map(domain: Optional[Carrier] = None, labels: Iterable[Hashable] = ()) -> DefinableMapDesc:
    return DefinableMapDesc(MapKind.CONST, domain=domain, domain_labels=tuple(labels))


def _unsupported(verb: str, m: DefinableMapDesc, carrier: Carrier):
    return UnsupportedCombination(
        f"cannot {verb} a {carrier.value} function along a {m.kind.value} map; "
        f"supported kinds: {SUPPORTED_MAPS}")


def compose_maps(first: DefinableMapDesc, second: DefinableMapDesc) -> DefinableMapDesc:
    """second after first."""
    if second.kind is MapKind.CONST:
        labels = [x for x, _ in first.table] if first.kind is MapKind.FINITE else first.domain_labels
        return const_map(first.source, labels)
    if first.kind is MapKind.FINITE and second.kind is MapKind.FINITE:
        outer = second.mapping
        missing = [y for _, y in first.table if y not in outer]
        if missing:
            raise RejectedInput(f"{missing[0]!r} is outside the domain of the second map")
        return DefinableMapDesc(MapKind.FINITE, tuple((x, outer[y]) for x, y in first.table),
                                codomain=second.codomain)
    raise UnsupportedCombination(
        f"cannot compose {first.kind.value} with {second.kind.value}; "
        "supported: finite then finite, anything then const")


# ── Pushforward and pullback ─────────────────────────────────────────────────

def fiber_integral(f: ConstructibleFn, x: Fraction) -> EulerDim:
    """Integral of a planar function over the vertical line through x."""
    line = Line2D.vertical(x)
    total = EulerDim.zero()
    for piece, v in f.parts:
        if isinstance(piece, Strip):
            if piece.over.contains(x):
                total = a_add(total, a_mul(v, LINE_CLASS))
            continue
        hit = intersect_line_simplex(line, piece)
        if hit is not None:
            total = a_add(total, a_mul(v, mu_piece(hit)))
    return total


def _push_proj_x(f: ConstructibleFn, check_constancy: bool) -> ConstructibleFn:
    if f.plane_kind == "strips":
        xs = line_breakpoints(p.over for p in f.pieces())
    else:
        xs = sorted({p[0] for cell in f.pieces() for p in cell})
    parts = []
    for atom in line_atoms(xs):
        value = fiber_integral(f, atom.sample())
        if check_constancy and isinstance(atom, OpenInterval):
            other = fiber_integral(f, atom.second_sample())
            if other != value:
                raise IdentityFailure(
                    f"fiber class is not constant on {render_piece(Carrier.LINE, atom)}",
                    witness=(atom.sample(), atom.second_sample()), lhs=value, rhs=other)
        if not value.is_zero:
            parts.append((atom, value))
    return ConstructibleFn(Carrier.LINE, tuple(parts))


def _push_line_incl(line: Line2D, f: ConstructibleFn) -> ConstructibleFn:
    parts = []
    for piece, v in f.parts:
        if isinstance(piece, LinePoint):
            parts.append(((line.point_at(piece.q),), v))
        elif piece.bounded:
            parts.append((simplex((line.point_at(piece.a), line.point_at(piece.b))), v))
        else:
            raise UnsupportedCombination(
                "line-incl pushforward needs a bounded line function; planar cells are compact")
    return ConstructibleFn(Carrier.PLANE, tuple(parts))


def cf_pushforward(m: DefinableMapDesc, f: ConstructibleFn,
                   check_constancy: Optional[bool] = None) -> ConstructibleFn:
    if check_constancy is None:
        check_constancy = CHECK_CONSTANCY
    if m.kind is MapKind.CONST:
        if m.domain is not None and m.domain is not f.carrier:
            raise _unsupported("push", m, f.carrier)
        return point_fn(cf_integrate(f))
    if m.source is not f.carrier:
        raise _unsupported("push", m, f.carrier)
    if m.kind is MapKind.FINITE:
        table = m.mapping
        out: Dict[Hashable, EulerDim] = {}
        for x, v in f.parts:
            if x not in table:
                raise RejectedInput(f"label {x!r} is outside the domain of the map")
            y = table[x]
            out[y] = a_add(out.get(y, EulerDim.zero()), v)
        return finite_fn(out)
    if m.kind is MapKind.PROJ_X:
        return _push_proj_x(f, check_constancy)
    return _push_line_incl(m.line, f)


def _restrict_to_line(line: Line2D, h: ConstructibleFn) -> ConstructibleFn:
    parts = []
    bx, dx = line.base[0], line.dir[0]

    def t(x):
        return (x - bx) / dx

    for piece, v in h.parts:
        if not isinstance(piece, Strip):
            hit = intersect_line_simplex(line, piece)
            if hit is not None:
                parts.append((hit, v))
            continue
        over = piece.over
        if dx == 0:
            if over.contains(bx):
                parts.append((OpenInterval(None, None), v))
        elif isinstance(over, LinePoint):
            parts.append((LinePoint(t(over.q)), v))
        else:
            lo = None if over.a is None else t(over.a)
            hi = None if over.b is None else t(over.b)
            if dx < 0:
                lo, hi = hi, lo
            parts.append((OpenInterval(lo, hi), v))
    return ConstructibleFn(Carrier.LINE, tuple(parts))


def cf_pullback(m: DefinableMapDesc, h: ConstructibleFn) -> ConstructibleFn:
    if h.carrier is not m.target:
        raise _unsupported("pull back", m, h.carrier)
    if m.kind is MapKind.CONST:
        if m.domain is None:
            raise RejectedInput("pulling back along a const map needs its domain carrier")
        return constant_fn(m.domain, cf_eval(h, POINT_LABEL), m.domain_labels)
    if m.kind is MapKind.FINITE:
        return finite_fn({x: cf_eval(h, y) for x, y in m.table})
    if m.kind is MapKind.PROJ_X:
        return ConstructibleFn(Carrier.PLANE, tuple((Strip(p), v) for p, v in h.parts))
    return _restrict_to_line(m.line, h)


# ── Identity harness ─────────────────────────────────────────────────────────

@dataclass
class CheckReport:
    name: str
    ok: bool
    lhs: Any = None
    rhs: Any = None
    witness: Any = None

    def summary(self) -> str:
        if self.ok:
            return f"{self.name}: OK ({render_value(self.lhs)})"
        where = "" if self.witness is None else f" at {self.witness!r}"
        return f"{self.name}: FAILED{where}: {render_value(self.lhs)} != {render_value(self.rhs)}"

    def raise_for_failure(self):
        if not self.ok:
            raise IdentityFailure(self.summary(), witness=self.witness, lhs=self.lhs, rhs=self.rhs)


def render_value(v) -> str:
    if isinstance(v, ConstructibleFn):
        return render_fn(v)
    return v.render() if hasattr(v, "render") else repr(v)


def fubini_check(m: DefinableMapDesc, f: ConstructibleFn) -> CheckReport:
    lhs = cf_integrate(f)
    rhs = cf_integrate(cf_pushforward(m, f))
    return CheckReport("fubini", lhs == rhs, lhs, rhs)


def projection_formula_check(m: DefinableMapDesc, g: ConstructibleFn,
                             h: ConstructibleFn) -> CheckReport:
    """f_!(g * f^*h) = f_!(g) * h, compared after common refinement."""
    if m.kind is MapKind.CONST and m.domain is None:
        m = replace(m, domain=g.carrier, domain_labels=tuple(g.pieces()) if g.carrier is Carrier.FINITE else ())
    lhs = cf_pushforward(m, cf_mul(g, cf_pullback(m, h)))
    rhs = cf_mul(cf_pushforward(m, g), h)
    diff = first_difference(lhs, rhs)
    if diff is None:
        return CheckReport("projection formula", True, lhs, rhs)
    return CheckReport("projection formula", False, diff[1], diff[2], witness=diff[0])


# ── Rendering ────────────────────────────────────────────────────────────────

def _bound(v: Optional[Fraction], neg: bool) -> str:
    if v is None:
        return "-inf" if neg else "+inf"
    return render_rat(v)


def _pt(p) -> str:
    return f"({render_rat(p[0])}, {render_rat(p[1])})"


def render_piece(carrier: Carrier, piece) -> str:
    if carrier is Carrier.FINITE:
        return str(piece)
    if isinstance(piece, LinePoint):
        return "{" + render_rat(piece.q) + "}"
    if isinstance(piece, OpenInterval):
        return f"({_bound(piece.a, True)}, {_bound(piece.b, False)})"
    if isinstance(piece, CirclePoint):
        return f"dir{piece.d}"
    if isinstance(piece, OpenArc):
        return f"arc{piece.start}->{piece.end}"
    if isinstance(piece, Strip):
        return f"strip over {render_piece(Carrier.LINE, piece.over)}"
    return "-".join(_pt(p) for p in piece)


def render_fn(f: ConstructibleFn) -> str:
    if f.is_zero:
        return f"{f.carrier.value}: 0"
    body = "; ".join(f"{render_piece(f.carrier, p)}: {v.render()}" for p, v in f.parts)
    return f"{f.carrier.value}: {body}"
