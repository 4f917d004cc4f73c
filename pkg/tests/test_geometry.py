from fractions import Fraction

import numpy as np
import pytest

from src.errors import RejectedInput
from src.geometry import (
    AffineMap, CirclePoint, CircleSet, Line2D, LinePoint, LineSet1D, OpenArc, OpenInterval,
    PlaneComplex, affine_image, barycentric_subdivide, check_disjoint, closed_convex_polygon,
    critical_directions, direction, disjoint_union, intersect_line_simplex, line_atoms, mu_1d,
    mu_circle, mu_complex, point2, point_in_simplex, polygon_boundary, rat, refine_vertical,
)
from src.io_formats import complex_from_json, load_json
from src.scenes import PENTAGON, UNIT_SQUARE, UNIT_TRIANGLE, builtin_scene, random_grid_complex
from src.semiring import EulerDim

SEEDS = range(8)


# 1. Exact rationals

def test_rat_accepts_exact_forms_only():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(2) == Fraction(2)
    for bad in (0.5, True, "x/2", "1/0"):
        with pytest.raises(RejectedInput):
            rat(bad)


# 2. The line and the direction circle

def test_mu_of_line_sets():
    assert mu_1d(LineSet1D()) == EulerDim.zero()
    assert mu_1d(LineSet1D.from_pieces([LinePoint(Fraction(0)), LinePoint(Fraction(1))])) == EulerDim(2, 0)
    half_open = LineSet1D.from_pieces([OpenInterval(Fraction(1), Fraction(2)), LinePoint(Fraction(0))])
    assert mu_1d(half_open) == EulerDim(0, 1)
    assert mu_1d(LineSet1D((OpenInterval(None, None),))) == EulerDim(-1, 1)


def test_line_set_rejects_overlap():
    with pytest.raises(RejectedInput):
        LineSet1D((OpenInterval(Fraction(0), Fraction(2)), OpenInterval(Fraction(1), Fraction(3))))
    with pytest.raises(RejectedInput):
        OpenInterval(Fraction(1), Fraction(1))


def test_line_atoms_cover_the_line():
    atoms = line_atoms([Fraction(1), Fraction(0)])
    assert len(atoms) == 5
    assert mu_1d(LineSet1D(tuple(atoms))) == EulerDim(-1, 1)


def test_directions_are_canonical():
    assert direction(2, 4) == (1, 2)
    assert direction(-1, -1) == (1, 1)
    assert direction(-1, 0) == (1, 0)
    assert direction("1/2", "-1/3") == (-3, 2)
    with pytest.raises(RejectedInput):
        direction(0, 0)


def test_full_circle_is_projective_line():
    assert mu_circle(CircleSet.full()) == EulerDim(0, 1)
    arc = OpenArc((1, 0), (0, 1))
    assert arc.contains((1, 1)) and not arc.contains((-1, 1))
    assert mu_circle(CircleSet((CirclePoint((1, 1)),))) == EulerDim(1, 0)


# 3. Planar complexes

def test_square_is_closed_disc():
    c = closed_convex_polygon(UNIT_SQUARE)
    assert len(c.cells) == 11
    assert mu_complex(c) == EulerDim(1, 2)
    assert mu_complex(polygon_boundary(UNIT_SQUARE)) == EulerDim(0, 1)
    assert mu_complex(PlaneComplex.empty()) == EulerDim.zero()


def test_overlapping_cells_are_named(data_dir):
    c = complex_from_json(load_json(data_dir / "scenes" / "bad-overlap.json"))
    assert check_disjoint(c) == (3, 7)
    with pytest.raises(RejectedInput, match="cells 3 and 7 overlap"):
        mu_complex(c)


def test_point_in_simplex_is_relative_interior():
    tri = tuple(sorted(point2(*p) for p in UNIT_TRIANGLE))
    assert point_in_simplex(point2("1/4", "1/4"), tri)
    assert not point_in_simplex(point2("1/2", 0), tri)
    edge = (point2(0, 0), point2(1, 0))
    assert point_in_simplex(point2("1/2", 0), edge)
    assert not point_in_simplex(point2(1, 0), edge)


@pytest.mark.parametrize("seed", SEEDS)
def test_subdivision_keeps_mu(seed):
    c = random_grid_complex(np.random.default_rng(seed))
    mu = mu_complex(c)
    assert mu_complex(barycentric_subdivide(c)) == mu
    assert mu_complex(refine_vertical(c, [Fraction(1, 2), Fraction(3, 2), Fraction(5, 3)])) == mu


@pytest.mark.parametrize("name", ["square", "triangle", "pentagon", "lshape"])
def test_affine_images_keep_mu(name):
    c = builtin_scene(name)
    m = AffineMap(2, 1, "-1/3", 1, 5, "-7/2")
    assert mu_complex(affine_image(c, m)) == mu_complex(c)


def test_singular_affine_map_is_rejected():
    with pytest.raises(RejectedInput, match="singular"):
        affine_image(builtin_scene("square"), AffineMap(1, 2, 2, 4))


def test_disjoint_union_adds_mu():
    square = builtin_scene("square")
    moved = affine_image(square, AffineMap(1, 0, 0, 1, 2, 0))
    assert mu_complex(disjoint_union(square, moved)) == EulerDim(2, 2)
    touching = affine_image(square, AffineMap(1, 0, 0, 1, 1, 0))
    with pytest.raises(RejectedInput, match="overlap"):
        disjoint_union(square, touching)


# 4. Lines

def test_line_meets_triangle_in_an_interval():
    tri = tuple(sorted(point2(*p) for p in UNIT_TRIANGLE))
    hit = intersect_line_simplex(Line2D(point2(0, "1/2"), (1, 0)), tri)
    assert hit == OpenInterval(Fraction(0), Fraction(1, 2))
    assert intersect_line_simplex(Line2D(point2(0, 2), (1, 0)), tri) is None


def test_critical_directions_of_exterior_point():
    dirs = critical_directions(point2(2, 2), closed_convex_polygon(UNIT_SQUARE))
    assert (1, 1) in dirs and (2, 1) in dirs and (1, 2) in dirs
    assert len(set(dirs)) == len(dirs)


def test_pentagon_is_a_disc():
    assert mu_complex(closed_convex_polygon(PENTAGON)) == EulerDim(1, 2)
