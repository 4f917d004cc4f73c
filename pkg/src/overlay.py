"""
Planar Overlay
==============
Common refinement of any finite family of compact planar cells, by vertical
decomposition:

  1. critical x-values: every vertex x and the x of every crossing between
     two cell boundaries (open edges and triangle sides);
  2. on each critical vertical line the atoms are the points where a
     boundary meets the line and the open vertical segments between them;
  3. inside each open slab the boundaries are totally ordered bottom to top,
     and the atoms are the open boundary pieces and the open trapezoids
     between consecutive boundaries.

Every input cell is a union of atoms and every atom lies inside or outside
each input cell, so a constructible function is constant on each atom and can
be evaluated at the atom's sample point. Regions above the top boundary or
below the bottom one are unbounded and outside every compact cell, so they
are never emitted.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Set, Tuple

from src.geometry import Point2, Simplex, cross, fan_triangulate, simplex, sub

Segment = Tuple[Point2, Point2]


@dataclass(frozen=True)
class Atom:
    sample: Point2
    cells: Tuple[Simplex, ...]


def _boundary(simplices: Iterable[Simplex]) -> Tuple[Set[Point2], Set[Segment]]:
    points: Set[Point2] = set()
    segments: Set[Segment] = set()
    for s in simplices:
        points.update(s)
        if len(s) == 2:
            segments.add(tuple(sorted(s)))
        elif len(s) == 3:
            for i in range(3):
                segments.add(tuple(sorted((s[i], s[(i + 1) % 3]))))
    return points, segments


def _crossing_x(s1: Segment, s2: Segment):
    """x of the intersection of two closed, non-parallel segments, or None."""
    a, b = s1
    c, d = s2
    r, q = sub(b, a), sub(d, c)
    denom = cross(r, q)
    if denom == 0:
        return None
    ac = sub(c, a)
    t = Fraction(cross(ac, q)) / denom
    u = Fraction(cross(ac, r)) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        return a[0] + t * r[0]
    return None


def _y_at(seg: Segment, x: Fraction) -> Fraction:
    (ax, ay), (bx, by) = seg
    return ay + (x - ax) / (bx - ax) * (by - ay)


def critical_xs(points: Iterable[Point2], segments: Sequence[Segment]) -> List[Fraction]:
    xs = {p[0] for p in points}
    for i in range(len(segments)):
        for j in range(i + 1, len(segments)):
            x = _crossing_x(segments[i], segments[j])
            if x is not None:
                xs.add(x)
    return sorted(xs)


def overlay_atoms(families: Sequence[Iterable[Simplex]],
                  extra_xs: Iterable[Fraction] = ()) -> List[Atom]:
    points: Set[Point2] = set()
    segments: Set[Segment] = set()
    for fam in families:
        p, s = _boundary(fam)
        points |= p
        segments |= s
    segs = sorted(segments)
    xs = sorted(set(critical_xs(points, segs)) | set(extra_xs))
    sloped = [s for s in segs if s[0][0] != s[1][0]]
    upright = [s for s in segs if s[0][0] == s[1][0]]

    atoms: List[Atom] = []
    for x in xs:
        ys = {p[1] for p in points if p[0] == x}
        for s in upright:
            if s[0][0] == x:
                ys.update((s[0][1], s[1][1]))
        for s in sloped:
            if s[0][0] <= x <= s[1][0]:
                ys.add(_y_at(s, x))
        ys = sorted(ys)
        for k, y in enumerate(ys):
            atoms.append(Atom((x, y), (simplex(((x, y),)),)))
            if k + 1 < len(ys):
                y2 = ys[k + 1]
                atoms.append(Atom((x, (y + y2) / 2), (simplex(((x, y), (x, y2))),)))

    for x0, x1 in zip(xs, xs[1:]):
        xm = (x0 + x1) / 2
        lines = sorted({(_y_at(s, x0), _y_at(s, x1)) for s in sloped
                        if s[0][0] <= x0 and s[1][0] >= x1},
                       key=lambda yy: yy[0] + yy[1])
        for k, (y0, y1) in enumerate(lines):
            atoms.append(Atom((xm, (y0 + y1) / 2), (simplex(((x0, y0), (x1, y1))),)))
            if k + 1 < len(lines):
                u0, u1 = lines[k + 1]
                quad = [(x0, y0), (x1, y1), (x1, u1), (x0, u0)]
                sample = (xm, (y0 + y1 + u0 + u1) / 4)
                atoms.append(Atom(sample, tuple(fan_triangulate(quad))))
    return atoms
