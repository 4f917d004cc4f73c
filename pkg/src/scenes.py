"""
Scenes
======
Built-in planar complexes and seeded random generators for scenes, weights
and sample points. Random complexes are unions of closed grid triangles, so
their cells are disjoint by construction.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from src.constructible import Carrier, ConstructibleFn, weighted_complex
from src.errors import RejectedInput
from src.geometry import (
    PlaneComplex, Point2, closed_complex, closed_convex_polygon, line_atoms, point2, simplex,
)
from src.semiring import EulerDim

UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
UNIT_TRIANGLE = [(0, 0), (1, 0), (0, 1)]
PENTAGON = [(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)]
L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
L_SHAPE_TRIANGLES = [(0, 1, 2), (0, 2, 3), (0, 3, 5), (3, 4, 5)]

BUILTIN_SCENES: Dict[str, Callable[[], PlaneComplex]] = {
    "square": lambda: closed_convex_polygon(UNIT_SQUARE),
    "triangle": lambda: closed_convex_polygon(UNIT_TRIANGLE),
    "pentagon": lambda: closed_convex_polygon(PENTAGON),
    "lshape": lambda: closed_complex(L_SHAPE, L_SHAPE_TRIANGLES),
}

CONVEX_SCENES = ("square", "triangle", "pentagon")


def builtin_scene(name: str) -> PlaneComplex:
    if name not in BUILTIN_SCENES:
        raise RejectedInput(f"unknown scene {name!r}; built-in scenes: {', '.join(BUILTIN_SCENES)}")
    return BUILTIN_SCENES[name]()


def _int(rng: np.random.Generator, lo: int, hi: int) -> int:
    return int(rng.integers(lo, hi + 1))


def random_grid_complex(rng: np.random.Generator, size: int = 3,
                        density: float = 0.4) -> PlaneComplex:
    """Closed union of random half-squares of a size x size grid (never empty)."""
    tris: List[Tuple[Point2, ...]] = []
    for i in range(size):
        for j in range(size):
            a, b, c, d = (i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)
            for tri in ((a, b, c), (a, c, d)):
                if rng.random() < density:
                    tris.append(tri)
    if not tris:
        tris.append(((0, 0), (1, 0), (1, 1)))
    points = sorted({p for t in tris for p in t})
    index = {p: n for n, p in enumerate(points)}
    return closed_complex(points, [tuple(index[p] for p in t) for t in tris])


def random_weights(rng: np.random.Generator, n: int) -> List[EulerDim]:
    """Non-zero A-values, so every cell stays in the support."""
    return [EulerDim(_int(rng, -3, 3), _int(rng, 0, 3)) for _ in range(n)]


def random_rational(rng: np.random.Generator, lo: Fraction, hi: Fraction, den: int = 7) -> Fraction:
    return Fraction(_int(rng, int(lo * den), int(hi * den)), den)


def bounding_box(c: PlaneComplex) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    xs = [v[0] for v in c.vertices] or [Fraction(0)]
    ys = [v[1] for v in c.vertices] or [Fraction(0)]
    return min(xs), max(xs), min(ys), max(ys)


def random_samples(c: PlaneComplex, n: int, rng: np.random.Generator,
                   margin: int = 1) -> List[Point2]:
    x0, x1, y0, y1 = bounding_box(c)
    return [point2(random_rational(rng, x0 - margin, x1 + margin),
                   random_rational(rng, y0 - margin, y1 + margin)) for _ in range(n)]


def split_samples(c: PlaneComplex, n: int, rng: np.random.Generator,
                  max_draws: int = 10_000) -> Tuple[List[Point2], List[Point2]]:
    """n samples inside |c| and n outside, drawn from the bounding box plus a margin."""
    inside: List[Point2] = []
    outside: List[Point2] = []
    for _ in range(max_draws):
        if len(inside) >= n and len(outside) >= n:
            break
        p = random_samples(c, 1, rng)[0]
        bucket = inside if c.contains(p) else outside
        if len(bucket) < n:
            bucket.append(p)
    return inside, outside


def centroid(points: Sequence[Point2]) -> Point2:
    pts = [point2(*p) for p in points]
    return (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))


def triangle_of(points: Sequence[Sequence]) -> Tuple[Point2, ...]:
    return simplex(point2(*p) for p in points)


def random_weighted_fn(rng: np.random.Generator, size: int = 3) -> ConstructibleFn:
    """A random grid complex carrying random non-zero A-weights on its cells."""
    c = random_grid_complex(rng, size)
    return weighted_complex(c, random_weights(rng, len(c.cells)))


def random_line_fn(rng: np.random.Generator, breaks: int = 3, span: int = 4) -> ConstructibleFn:
    """Random values on the atoms cut out by a few rational breakpoints, rays included."""
    bps = {random_rational(rng, Fraction(-span), Fraction(span), den=2) for _ in range(breaks)}
    parts = []
    for atom in line_atoms(bps):
        if rng.random() < 0.7:
            parts.append((atom, EulerDim(_int(rng, -3, 3), _int(rng, 0, 2))))
    return ConstructibleFn(Carrier.LINE, tuple(parts))
