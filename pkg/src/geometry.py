"""
Exact Geometry
==============
Rational carriers for the measure mu(X) = (chi(X), dim(X)):

  LineSet1D     disjoint points and open intervals on the line (rays allowed)
  CircleSet     disjoint points and open arcs on the direction circle RP^1
  PlaneComplex  disjoint open cells (vertices, open edges, open triangles)

Every set is a disjoint union of open cells, so chi is the alternating count
sum (-1)^dim over cells. Coordinates are fractions.Fraction; directions are
primitive integer vectors (p, q) with q > 0, or q = 0 and p > 0. Nothing in
this module touches floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.errors import RejectedInput
from src.semiring import EulerDim

Point2 = Tuple[Fraction, Fraction]
Direction = Tuple[int, int]
Simplex = Tuple[Point2, ...]   # 1, 2 or 3 points: vertex, open edge, open triangle


def rat(value) -> Fraction:
    """Parse an exact rational from an int, a Fraction or a "p/q" string."""
    if isinstance(value, bool):
        raise RejectedInput(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise RejectedInput(f"not a rational: {value!r}")
    raise RejectedInput(f"rationals must be given exactly (int or 'p/q'), got {value!r}")


def render_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def point2(x, y) -> Point2:
    return (rat(x), rat(y))


def cross(u: Sequence, v: Sequence):
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Sequence, v: Sequence):
    return u[0] * v[0] + u[1] * v[1]


def sub(a: Sequence, b: Sequence) -> Point2:
    return (a[0] - b[0], a[1] - b[1])


def orient(a: Point2, b: Point2, c: Point2):
    """Twice the signed area of (a, b, c); > 0 when counter-clockwise."""
    return cross(sub(b, a), sub(c, a))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


# ── Line: points and open intervals ──────────────────────────────────────────

@dataclass(frozen=True)
class LinePoint:
    q: Fraction

    @property
    def dim(self) -> int:
        return 0

    def contains(self, t: Fraction) -> bool:
        return t == self.q

    def sample(self) -> Fraction:
        return self.q


@dataclass(frozen=True)
class OpenInterval:
    """(a, b); a = None is -infinity, b = None is +infinity."""
    a: Optional[Fraction]
    b: Optional[Fraction]

    def __post_init__(self):
        if self.a is not None and self.b is not None and not self.a < self.b:
            raise RejectedInput(f"empty interval ({self.a}, {self.b})")

    @property
    def dim(self) -> int:
        return 1

    @property
    def bounded(self) -> bool:
        return self.a is not None and self.b is not None

    def contains(self, t: Fraction) -> bool:
        return (self.a is None or self.a < t) and (self.b is None or t < self.b)

    def sample(self) -> Fraction:
        if self.a is None and self.b is None:
            return Fraction(0)
        if self.a is None:
            return self.b - 1
        if self.b is None:
            return self.a + 1
        return (self.a + self.b) / 2

    def second_sample(self) -> Fraction:
        if self.a is None and self.b is None:
            return Fraction(1)
        if self.a is None:
            return self.b - 2
        if self.b is None:
            return self.a + 2
        return (3 * self.a + self.b) / 4


LinePiece = Union[LinePoint, OpenInterval]


def _line_bounds(p: LinePiece) -> Tuple[float, float]:
    if isinstance(p, LinePoint):
        return (p.q, p.q)
    return (-math.inf if p.a is None else p.a, math.inf if p.b is None else p.b)


def line_piece_key(p: LinePiece):
    lo, _ = _line_bounds(p)
    # at equal left ends the point comes first: {q} then (q, b)
    return (lo, 0 if isinstance(p, LinePoint) else 1)


@dataclass(frozen=True)
class LineSet1D:
    pieces: Tuple[LinePiece, ...] = ()

    def __post_init__(self):
        ps = tuple(self.pieces)
        for prev, nxt in zip(ps, ps[1:]):
            _, prev_hi = _line_bounds(prev)
            nxt_lo, _ = _line_bounds(nxt)
            touching_points = isinstance(prev, LinePoint) and isinstance(nxt, LinePoint)
            if prev_hi > nxt_lo or (prev_hi == nxt_lo and touching_points):
                raise RejectedInput(f"line pieces overlap or are unsorted: {prev} and {nxt}")
            if isinstance(prev, LinePoint) and isinstance(nxt, OpenInterval) and nxt.contains(prev.q):
                raise RejectedInput(f"point {prev.q} lies inside {nxt}")
        object.__setattr__(self, "pieces", ps)

    @classmethod
    def from_pieces(cls, pieces: Iterable[LinePiece]) -> "LineSet1D":
        return cls(tuple(sorted(pieces, key=line_piece_key)))

    def contains(self, t: Fraction) -> bool:
        return any(p.contains(t) for p in self.pieces)


def mu_1d(s: LineSet1D) -> EulerDim:
    points = sum(1 for p in s.pieces if isinstance(p, LinePoint))
    intervals = len(s.pieces) - points
    if intervals:
        return EulerDim(points - intervals, 1)
    if points:
        return EulerDim(points, 0)
    return EulerDim.zero()


def mu_piece(piece) -> EulerDim:
    """mu of a single open cell: (1, 0) for a point, (-1, 1) for an open interval or arc."""
    d = piece.dim
    return EulerDim((-1) ** d, d)


def line_atoms(breakpoints: Iterable[Fraction]) -> List[LinePiece]:
    """Partition of the whole line by the given breakpoints, in order."""
    bs = sorted(set(breakpoints))
    if not bs:
        return [OpenInterval(None, None)]
    atoms: List[LinePiece] = [OpenInterval(None, bs[0])]
    for i, b in enumerate(bs):
        atoms.append(LinePoint(b))
        atoms.append(OpenInterval(b, bs[i + 1] if i + 1 < len(bs) else None))
    return atoms


def line_breakpoints(pieces: Iterable[LinePiece]) -> List[Fraction]:
    out = set()
    for p in pieces:
        if isinstance(p, LinePoint):
            out.add(p.q)
        else:
            out.update(v for v in (p.a, p.b) if v is not None)
    return sorted(out)


# ── Direction circle RP^1 ────────────────────────────────────────────────────

def direction(dx, dy) -> Direction:
    """Primitive integer vector with canonical sign spanning the line of (dx, dy)."""
    dx, dy = rat(dx), rat(dy)
    if dx == 0 and dy == 0:
        raise RejectedInput("zero vector has no direction")
    scale = dx.denominator * dy.denominator // math.gcd(dx.denominator, dy.denominator)
    p, q = int(dx * scale), int(dy * scale)
    g = math.gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return (p, q)


def is_canonical_direction(d: Sequence) -> bool:
    if len(d) != 2 or not all(isinstance(v, int) and not isinstance(v, bool) for v in d):
        return False
    p, q = d
    return (p, q) != (0, 0) and math.gcd(p, q) == 1 and (q > 0 or (q == 0 and p > 0))


def angle_key(d: Direction):
    """Monotone in the angle of d within [0, pi)."""
    p, q = d
    return (0, Fraction(0)) if q == 0 else (1, -Fraction(p, q))


def sort_directions(ds: Iterable[Direction]) -> List[Direction]:
    return sorted(set(ds), key=angle_key)


def _rot90(d: Direction) -> Direction:
    return direction(-d[1], d[0])


@dataclass(frozen=True)
class CirclePoint:
    d: Direction

    def __post_init__(self):
        if not is_canonical_direction(self.d):
            raise RejectedInput(f"direction {self.d} is not primitive with canonical sign")
        object.__setattr__(self, "d", tuple(self.d))

    @property
    def dim(self) -> int:
        return 0

    def contains(self, d: Direction) -> bool:
        return tuple(d) == self.d

    def sample(self) -> Direction:
        return self.d


@dataclass(frozen=True)
class OpenArc:
    """Directions strictly between start and end, counter-clockwise; start == end
    is the whole circle minus one point."""
    start: Direction
    end: Direction

    def __post_init__(self):
        for d in (self.start, self.end):
            if not is_canonical_direction(d):
                raise RejectedInput(f"direction {d} is not primitive with canonical sign")
        object.__setattr__(self, "start", tuple(self.start))
        object.__setattr__(self, "end", tuple(self.end))

    @property
    def dim(self) -> int:
        return 1

    @property
    def wraps(self) -> bool:
        return angle_key(self.start) >= angle_key(self.end)

    def contains(self, d: Direction) -> bool:
        d = tuple(d)
        if self.start == self.end:
            return d != self.start
        ks, ke, kd = angle_key(self.start), angle_key(self.end), angle_key(d)
        if ks < ke:
            return ks < kd < ke
        return kd > ks or kd < ke

    def sample(self) -> Direction:
        s, e = self.start, self.end
        if s == e:
            return _rot90(s)
        if angle_key(s) < angle_key(e):
            return direction(s[0] + e[0], s[1] + e[1])
        return direction(s[0] - e[0], s[1] - e[1])

    def second_sample(self) -> Direction:
        return OpenArc(self.start, self.sample()).sample()


CirclePiece = Union[CirclePoint, OpenArc]


def circle_piece_key(p: CirclePiece):
    d = p.d if isinstance(p, CirclePoint) else p.start
    return (angle_key(d), 0 if isinstance(p, CirclePoint) else 1)


def circle_atoms(breakpoints: Iterable[Direction]) -> List[CirclePiece]:
    """Points at the breakpoints and the open arcs between cyclic neighbours."""
    bs = sort_directions(breakpoints)
    if not bs:
        bs = [(1, 0)]
    atoms: List[CirclePiece] = []
    for i, b in enumerate(bs):
        atoms.append(CirclePoint(b))
        atoms.append(OpenArc(b, bs[(i + 1) % len(bs)]))
    return atoms


def circle_breakpoints(pieces: Iterable[CirclePiece]) -> List[Direction]:
    out = set()
    for p in pieces:
        if isinstance(p, CirclePoint):
            out.add(p.d)
        else:
            out.update((p.start, p.end))
    return sort_directions(out)


@dataclass(frozen=True)
class CircleSet:
    pieces: Tuple[CirclePiece, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(self.pieces, key=circle_piece_key))
        for atom in circle_atoms(circle_breakpoints(ps)):
            sample = atom.sample()
            owners = [p for p in ps if p.contains(sample)]
            if len(owners) > 1:
                raise RejectedInput(f"circle pieces overlap: {owners[0]} and {owners[1]}")
        object.__setattr__(self, "pieces", ps)

    @classmethod
    def full(cls) -> "CircleSet":
        return cls((CirclePoint((1, 0)), OpenArc((1, 0), (1, 0))))

    def contains(self, d: Direction) -> bool:
        return any(p.contains(d) for p in self.pieces)


def mu_circle(s: CircleSet) -> EulerDim:
    points = sum(1 for p in s.pieces if isinstance(p, CirclePoint))
    arcs = len(s.pieces) - points
    if arcs:
        return EulerDim(points - arcs, 1)
    if points:
        return EulerDim(points, 0)
    return EulerDim.zero()


# ── Planar cells ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Vertex:
    i: int


@dataclass(frozen=True)
class OpenEdge:
    i: int
    j: int


@dataclass(frozen=True)
class OpenTriangle:
    i: int
    j: int
    k: int


Cell = Union[Vertex, OpenEdge, OpenTriangle]


def cell_indices(cell: Cell) -> Tuple[int, ...]:
    if isinstance(cell, Vertex):
        return (cell.i,)
    if isinstance(cell, OpenEdge):
        return (cell.i, cell.j)
    return (cell.i, cell.j, cell.k)


def simplex(points: Iterable[Point2]) -> Simplex:
    """Canonical (sorted) form of a geometric cell."""
    return tuple(sorted(points))


def simplex_dim(s: Simplex) -> int:
    return len(s) - 1


class VertexPool:
    """Deduplicating vertex list: coordinates -> index."""

    def __init__(self, vertices: Iterable[Point2] = ()):
        self.vertices: List[Point2] = []
        self.index: Dict[Point2, int] = {}
        for v in vertices:
            self.add(v)

    def add(self, p: Point2) -> int:
        if p not in self.index:
            self.index[p] = len(self.vertices)
            self.vertices.append(p)
        return self.index[p]

    def cell(self, s: Simplex) -> Cell:
        idx = [self.add(p) for p in s]
        if len(idx) == 1:
            return Vertex(*idx)
        if len(idx) == 2:
            return OpenEdge(*idx)
        return OpenTriangle(*idx)


@dataclass(frozen=True)
class PlaneComplex:
    vertices: Tuple[Point2, ...]
    cells: Tuple[Cell, ...]

    def __post_init__(self):
        vs = tuple((rat(x), rat(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "cells", tuple(self.cells))
        for n, cell in enumerate(self.cells):
            idx = cell_indices(cell)
            if any(not 0 <= i < len(vs) for i in idx):
                raise RejectedInput(f"cell {n} references a missing vertex")
            pts = [vs[i] for i in idx]
            if len(set(pts)) != len(pts):
                raise RejectedInput(f"cell {n} has repeated vertices")
            if len(pts) == 3 and orient(*pts) == 0:
                raise RejectedInput(f"cell {n}: triangle vertices are affinely dependent")

    @classmethod
    def from_simplices(cls, simplices: Iterable[Simplex],
                       vertices: Iterable[Point2] = ()) -> "PlaneComplex":
        pool = VertexPool(vertices)
        cells = [pool.cell(s) for s in simplices]
        return cls(tuple(pool.vertices), tuple(cells))

    @classmethod
    def empty(cls) -> "PlaneComplex":
        return cls((), ())

    def simplex_of(self, n: int) -> Simplex:
        return simplex(self.vertices[i] for i in cell_indices(self.cells[n]))

    def simplices(self) -> List[Simplex]:
        return [self.simplex_of(n) for n in range(len(self.cells))]

    def contains(self, p: Point2) -> bool:
        return any(point_in_simplex(p, s) for s in self.simplices())


def point_in_simplex(p: Point2, s: Simplex) -> bool:
    """Is p in the relative interior of s?"""
    if len(s) == 1:
        return p == s[0]
    if len(s) == 2:
        a, b = s
        if orient(a, b, p) != 0:
            return False
        t = dot(sub(p, a), sub(b, a))
        return 0 < t < dot(sub(b, a), sub(b, a))
    a, b, c = s
    signs = {_sign(orient(a, b, p)), _sign(orient(b, c, p)), _sign(orient(c, a, p))}
    return signs in ({1}, {-1})


def _open_range(constraints: Iterable[Tuple[Fraction, Fraction]],
                lo: Optional[Fraction] = None,
                hi: Optional[Fraction] = None) -> Optional[Tuple[Optional[Fraction], Optional[Fraction]]]:
    """Solve c0 + c1*t > 0 for all constraints, t in (lo, hi); None if empty."""
    for c0, c1 in constraints:
        if c1 == 0:
            if c0 <= 0:
                return None
            continue
        root = -c0 / c1
        if c1 > 0:
            lo = root if lo is None else max(lo, root)
        else:
            hi = root if hi is None else min(hi, root)
    if lo is not None and hi is not None and not lo < hi:
        return None
    return (lo, hi)


def _triangle_constraints(tri: Simplex, base: Point2, vel: Point2):
    """Constraints on t for base + t*vel to lie in the open triangle."""
    a, b, c = tri
    s = _sign(orient(a, b, c))
    out = []
    for u, v in ((a, b), (b, c), (c, a)):
        edge = sub(v, u)
        out.append((s * cross(edge, sub(base, u)), s * cross(edge, vel)))
    return out


def _segments_meet(s1: Simplex, s2: Simplex) -> bool:
    a, b = s1
    c, d = s2
    o1, o2 = orient(a, b, c), orient(a, b, d)
    if o1 == 0 and o2 == 0:
        ab = sub(b, a)
        tc, td = dot(sub(c, a), ab), dot(sub(d, a), ab)
        return max(Fraction(0), min(tc, td)) < min(dot(ab, ab), max(tc, td))
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def _segment_meets_triangle(seg: Simplex, tri: Simplex) -> bool:
    a, b = seg
    return _open_range(_triangle_constraints(tri, a, sub(b, a)),
                       Fraction(0), Fraction(1)) is not None


def _separated_by_edge(t1: Simplex, t2: Simplex) -> bool:
    for i in range(3):
        u, v, w = t1[i], t1[(i + 1) % 3], t1[(i + 2) % 3]
        s = _sign(orient(u, v, w))
        if all(s * orient(u, v, x) <= 0 for x in t2):
            return True
    return False


def simplices_meet(s1: Simplex, s2: Simplex) -> bool:
    """Do the relative interiors of two cells intersect?"""
    if len(s1) > len(s2):
        s1, s2 = s2, s1
    if len(s1) == 1:
        return point_in_simplex(s1[0], s2)
    if len(s1) == 2 and len(s2) == 2:
        return _segments_meet(s1, s2)
    if len(s1) == 2:
        return _segment_meets_triangle(s1, s2)
    return not (_separated_by_edge(s1, s2) or _separated_by_edge(s2, s1))


def check_disjoint(c: PlaneComplex) -> Optional[Tuple[int, int]]:
    """First pair of cells whose relative interiors meet, or None."""
    ss = c.simplices()
    for i in range(len(ss)):
        for j in range(i + 1, len(ss)):
            if simplices_meet(ss[i], ss[j]):
                return (i, j)
    return None


def mu_simplices(simplices: Iterable[Simplex]) -> EulerDim:
    """Alternating count of cells already known to be disjoint."""
    chi, top = 0, None
    for s in simplices:
        d = simplex_dim(s)
        chi += (-1) ** d
        top = d if top is None else max(top, d)
    return EulerDim.zero() if top is None else EulerDim(chi, top)


def mu_complex(c: PlaneComplex) -> EulerDim:
    overlap = check_disjoint(c)
    if overlap:
        raise RejectedInput(f"cells {overlap[0]} and {overlap[1]} overlap")
    return mu_simplices(c.simplices())


def disjoint_union(c1: PlaneComplex, c2: PlaneComplex) -> PlaneComplex:
    union = PlaneComplex.from_simplices(c1.simplices() + c2.simplices(), c1.vertices)
    overlap = check_disjoint(union)
    if overlap:
        raise RejectedInput(f"cells {overlap[0]} and {overlap[1]} overlap")
    return union


# ── Lines in the plane ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class Line2D:
    base: Point2
    dir: Direction

    def __post_init__(self):
        object.__setattr__(self, "base", point2(*self.base))
        if not is_canonical_direction(tuple(self.dir)):
            raise RejectedInput(f"line direction {self.dir} is not primitive with canonical sign")
        object.__setattr__(self, "dir", tuple(self.dir))

    @classmethod
    def through(cls, p: Point2, q: Point2) -> "Line2D":
        return cls(p, direction(q[0] - p[0], q[1] - p[1]))

    @classmethod
    def vertical(cls, x: Fraction) -> "Line2D":
        return cls((x, Fraction(0)), (0, 1))

    def point_at(self, t: Fraction) -> Point2:
        return (self.base[0] + t * self.dir[0], self.base[1] + t * self.dir[1])

    def param_of(self, p: Point2) -> Fraction:
        return Fraction(dot(sub(p, self.base), self.dir)) / dot(self.dir, self.dir)

    def contains(self, p: Point2) -> bool:
        return cross(self.dir, sub(p, self.base)) == 0


def intersect_line_simplex(l: Line2D, s: Simplex) -> Optional[LinePiece]:
    """Intersection of l with one open cell, in the parameter of l."""
    if len(s) == 1:
        return LinePoint(l.param_of(s[0])) if l.contains(s[0]) else None
    if len(s) == 2:
        a, b = s
        oa, ob = cross(l.dir, sub(a, l.base)), cross(l.dir, sub(b, l.base))
        if oa == 0 and ob == 0:
            ta, tb = l.param_of(a), l.param_of(b)
            return OpenInterval(min(ta, tb), max(ta, tb))
        if oa * ob < 0:
            u = Fraction(oa) / (oa - ob)
            return LinePoint(l.param_of((a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1]))))
        return None
    rng = _open_range(_triangle_constraints(s, l.base, l.dir))
    return None if rng is None else OpenInterval(*rng)


def intersect_line_complex(l: Line2D, c: PlaneComplex) -> List[Tuple[int, LineSet1D]]:
    out = []
    for n, s in enumerate(c.simplices()):
        piece = intersect_line_simplex(l, s)
        if piece is not None:
            out.append((n, LineSet1D((piece,))))
    return out


def line_trace(l: Line2D, c: PlaneComplex) -> LineSet1D:
    """l intersected with the whole complex, as one 1-D set."""
    return LineSet1D.from_pieces(p for _, ls in intersect_line_complex(l, c) for p in ls.pieces)


def critical_directions_of(p: Point2, simplices: Iterable[Simplex]) -> List[Direction]:
    dirs = set()
    for s in simplices:
        for v in s:
            if v != p:
                dirs.add(direction(v[0] - p[0], v[1] - p[1]))
        if len(s) >= 2:
            for i in range(len(s)):
                a, b = s[i], s[(i + 1) % len(s)]
                if orient(a, b, p) == 0:
                    dirs.add(direction(b[0] - a[0], b[1] - a[1]))
    return sort_directions(dirs)


def critical_directions(p: Point2, c: PlaneComplex) -> List[Direction]:
    return critical_directions_of(p, c.simplices())


# ── Clipping, refinement, subdivision ────────────────────────────────────────

def _clip_x(poly: List[Point2], x0: Fraction, keep_right: bool) -> List[Point2]:
    """Sutherland-Hodgman step against the closed half-plane x >= x0 (or x <= x0)."""
    def inside(p):
        return p[0] >= x0 if keep_right else p[0] <= x0

    def cut(s, e):
        u = (x0 - s[0]) / (e[0] - s[0])
        return (x0, s[1] + u * (e[1] - s[1]))

    out: List[Point2] = []
    for i, cur in enumerate(poly):
        prev = poly[i - 1]
        if inside(cur):
            if not inside(prev):
                out.append(cut(prev, cur))
            out.append(cur)
        elif inside(prev):
            out.append(cut(prev, cur))
    return out


def clean_polygon(poly: List[Point2]) -> List[Point2]:
    """Drop repeated and collinear corners of a convex polygon."""
    pts: List[Point2] = []
    for p in poly:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            if orient(pts[i - 1], pts[i], pts[(i + 1) % len(pts)]) == 0:
                del pts[i]
                changed = True
                break
    return pts


def fan_triangulate(poly: List[Point2]) -> List[Simplex]:
    """Open convex polygon -> open triangles plus open diagonals from one apex.

    The apex is the lexicographically smallest corner, so the output is
    deterministic. chi = (m - 2) - (m - 3) = 1 for an m-gon.
    """
    pts = clean_polygon(poly)
    if len(pts) < 3:
        return []
    start = pts.index(min(pts))
    pts = pts[start:] + pts[:start]
    cells: List[Simplex] = []
    for i in range(1, len(pts) - 1):
        cells.append(simplex((pts[0], pts[i], pts[i + 1])))
        if i >= 2:
            cells.append(simplex((pts[0], pts[i])))
    return cells


def _split_segment(seg: Simplex, xs: Sequence[Fraction]) -> List[Simplex]:
    a, b = seg
    lo, hi = min(a[0], b[0]), max(a[0], b[0])
    cuts = [x for x in xs if lo < x < hi]
    if not cuts:
        return [seg]
    if a[0] > b[0]:
        a, b = b, a
    pts = [a]
    for x in cuts:
        u = (x - a[0]) / (b[0] - a[0])
        pts.append((x, a[1] + u * (b[1] - a[1])))
    pts.append(b)
    out = [simplex((pts[i], pts[i + 1])) for i in range(len(pts) - 1)]
    out.extend((p,) for p in pts[1:-1])
    return out


def _vertical_chord(tri: Simplex, x: Fraction) -> Simplex:
    ys = []
    for i in range(3):
        u, v = tri[i], tri[(i + 1) % 3]
        if u[0] == v[0]:
            if u[0] == x:
                ys.extend((u[1], v[1]))
        elif min(u[0], v[0]) <= x <= max(u[0], v[0]):
            ys.append(u[1] + (x - u[0]) / (v[0] - u[0]) * (v[1] - u[1]))
    return simplex(((x, min(ys)), (x, max(ys))))


def _split_triangle(tri: Simplex, xs: Sequence[Fraction]) -> List[Simplex]:
    lo = min(p[0] for p in tri)
    hi = max(p[0] for p in tri)
    cuts = [x for x in xs if lo < x < hi]
    if not cuts:
        return [tri]
    ccw = list(tri) if orient(*tri) > 0 else [tri[0], tri[2], tri[1]]
    bounds = [lo] + cuts + [hi]
    out: List[Simplex] = []
    for left, right in zip(bounds, bounds[1:]):
        slab = _clip_x(_clip_x(ccw, left, keep_right=True), right, keep_right=False)
        out.extend(fan_triangulate(slab))
    out.extend(_vertical_chord(tri, x) for x in cuts)
    return out


def refine_vertical_simplices(simplices: Iterable[Simplex], xs: Iterable[Fraction]) -> List[Simplex]:
    cuts = sorted(set(rat(x) for x in xs))
    out: List[Simplex] = []
    for s in simplices:
        if len(s) == 1:
            out.append(s)
        elif len(s) == 2:
            out.extend(_split_segment(s, cuts))
        else:
            out.extend(_split_triangle(s, cuts))
    return out


def refine_vertical(c: PlaneComplex, xs: Iterable[Fraction]) -> PlaneComplex:
    """Split every cell by the vertical lines x = xs[i]; same point set, same mu."""
    xs = list(xs)
    if not xs:
        return c
    return PlaneComplex.from_simplices(refine_vertical_simplices(c.simplices(), xs), c.vertices)


def barycentric_subdivide(c: PlaneComplex) -> PlaneComplex:
    out: List[Simplex] = []
    for s in c.simplices():
        if len(s) < 3:
            out.append(s)
            continue
        g = (sum(p[0] for p in s) / 3, sum(p[1] for p in s) / 3)
        out.append((g,))
        for i in range(3):
            a, b = s[i], s[(i + 1) % 3]
            out.append(simplex((g, a)))
            out.append(simplex((g, a, b)))
    return PlaneComplex.from_simplices(out, c.vertices)


# ── Affine maps ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class AffineMap:
    """(x, y) -> (a x + b y + e, c x + d y + f)."""
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction = Fraction(0)
    f: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "e", "f"):
            object.__setattr__(self, name, rat(getattr(self, name)))

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __call__(self, p: Point2) -> Point2:
        x, y = p
        return (self.a * x + self.b * y + self.e, self.c * x + self.d * y + self.f)


def affine_image(c: PlaneComplex, m: AffineMap) -> PlaneComplex:
    if m.det == 0:
        raise RejectedInput("affine map is singular (determinant 0)")
    return PlaneComplex(tuple(m(v) for v in c.vertices), c.cells)


# ── Builders ─────────────────────────────────────────────────────────────────

def closed_complex(points: Sequence[Point2], triangles: Iterable[Tuple[int, int, int]]) -> PlaneComplex:
    """Closed union of the given triangles: all their vertices, sides and interiors."""
    pts = [point2(*p) for p in points]
    tris = [tuple(t) for t in triangles]
    edges = sorted({tuple(sorted((t[i], t[(i + 1) % 3]))) for t in tris for i in range(3)})
    used = sorted({i for t in tris for i in t})
    cells: List[Cell] = [Vertex(i) for i in used]
    cells += [OpenEdge(i, j) for i, j in edges]
    cells += [OpenTriangle(*t) for t in tris]
    return PlaneComplex(tuple(pts), tuple(cells))


def closed_convex_polygon(points: Sequence[Point2]) -> PlaneComplex:
    """Closed convex polygon, fan-triangulated from its first corner."""
    n = len(points)
    return closed_complex(points, [(0, i, i + 1) for i in range(1, n - 1)])


def polygon_boundary(points: Sequence[Point2]) -> PlaneComplex:
    n = len(points)
    cells: List[Cell] = [Vertex(i) for i in range(n)]
    cells += [OpenEdge(i, (i + 1) % n) for i in range(n)]
    return PlaneComplex(tuple(point2(*p) for p in points), tuple(cells))
