from fractions import Fraction

import numpy as np
import pytest

from src.axioms import axiom_suite
from src.constructible import (
    SEMIRING_LINE, Carrier, ConstructibleFn, Strip, cf_add, cf_integrate, cf_mul, cf_pullback,
    cf_pushforward, cf_refine, cf_scale, compose_maps, const_map, constant_fn, finite_fn,
    finite_map, first_difference, fubini_check, indicator_complex, indicator_finite,
    indicator_line, line_inclusion, point_fn, projection_formula_check, proj_x, render_fn,
)
from src.errors import RejectedInput, UnsupportedCombination
from src.geometry import (
    AffineMap, Line2D, LinePoint, LineSet1D, OpenInterval, affine_image,
    closed_convex_polygon, mu_complex, mu_simplices, point2, point_in_simplex, polygon_boundary,
)
from src.overlay import overlay_atoms
from src.scenes import UNIT_SQUARE, UNIT_TRIANGLE, random_line_fn, random_weighted_fn
from src.semiring import EulerDim

ONE = EulerDim.one()
F = Fraction


def square_fn():
    return indicator_complex(closed_convex_polygon(UNIT_SQUARE))


def unit_interval():
    return indicator_line(LineSet1D((OpenInterval(F(0), F(1)),)))


# 1. Integration and evaluation

def test_integral_of_square_indicator():
    f = square_fn()
    assert cf_integrate(f) == EulerDim(1, 2)
    assert f(point2("1/2", "1/3")) == ONE
    assert f(point2(2, 0)) == EulerDim.zero()


def test_zero_values_are_not_stored():
    f = finite_fn({"a": EulerDim.zero(), "b": EulerDim(2, 0)})
    assert f.pieces() == ["b"]
    assert cf_integrate(finite_fn({})) == EulerDim.zero()


def test_strips_and_cells_do_not_mix_in_one_function():
    with pytest.raises(RejectedInput):
        ConstructibleFn(Carrier.PLANE, ((Strip(OpenInterval(F(0), F(1))), ONE),
                                        (((F(5), F(5)),), ONE)))


def test_render_line_function():
    assert render_fn(unit_interval()) == "line: (0, 1): (1, 0)"
    assert render_fn(finite_fn({})) == "finite: 0"


# 2. Sums, products and the overlay

def shifted_square():
    return indicator_complex(affine_image(closed_convex_polygon(UNIT_SQUARE),
                                          AffineMap(1, 0, 0, 1, "1/2", "1/2")))


def test_sum_of_overlapping_squares():
    f, g = square_fn(), shifted_square()
    s = cf_add(f, g)
    assert s(point2("1/4", "1/4")) == EulerDim(1, 0)
    assert s(point2("3/4", "3/4")) == EulerDim(2, 0)
    assert s(point2("5/4", "5/4")) == EulerDim(1, 0)
    assert cf_integrate(s) == EulerDim(2, 2)
    assert s == cf_add(g, f)


def test_product_is_the_intersection():
    p = cf_mul(square_fn(), shifted_square())
    assert cf_integrate(p) == EulerDim(1, 2)
    assert p(point2("3/4", "1/2")) == ONE
    assert p(point2("1/4", "3/4")) == EulerDim.zero()


def test_overlay_atoms_partition_each_family():
    tri = closed_convex_polygon(UNIT_TRIANGLE)
    square = affine_image(closed_convex_polygon(UNIT_SQUARE), AffineMap(1, 0, 0, 1, "1/3", "-1/4"))
    atoms = overlay_atoms([tri.simplices(), square.simplices()])
    pieces = [cell for a in atoms for cell in a.cells]
    assert len(set(pieces)) == len(pieces)
    for c in (tri, square):
        inside = [cell for a in atoms if c.contains(a.sample) for cell in a.cells]
        assert mu_simplices(inside) == mu_complex(c)
    for a in atoms:
        for cell in a.cells:
            assert point_in_simplex(a.sample, cell) or len(a.cells) > 1


def test_sum_and_product_of_functions_sharing_vertices():
    sq = square_fn()
    assert cf_add(sq, sq) == cf_scale(EulerDim(2, 0), sq)
    assert cf_integrate(cf_add(sq, sq)) == EulerDim(2, 2)
    assert cf_mul(sq, sq) == sq
    tri = indicator_complex(closed_convex_polygon(UNIT_TRIANGLE))
    s = cf_add(sq, tri)
    assert s(point2(0, 0)) == EulerDim(2, 0)
    assert s(point2("3/4", "3/4")) == ONE
    assert cf_integrate(s) == EulerDim(2, 2)
    assert cf_integrate(cf_mul(sq, tri)) == EulerDim(1, 2)


def test_overlay_vertex_atoms_are_points():
    square = closed_convex_polygon(UNIT_SQUARE)
    atoms = overlay_atoms([square.simplices(), square.simplices()])
    corners = [a for a in atoms if a.sample == point2(0, 0)]
    assert [a.cells for a in corners] == [((point2(0, 0),),)]
    inside = [cell for a in atoms if square.contains(a.sample) for cell in a.cells]
    assert mu_simplices(inside) == EulerDim(1, 2)


def test_line_functions_form_a_semiring():
    report = axiom_suite(SEMIRING_LINE, random_line_fn, trials=1000, seed=13)
    assert report.ok, report.summary()


def test_sum_of_strips_and_cells_is_unsupported():
    strips = cf_pullback(proj_x(), unit_interval())
    with pytest.raises(UnsupportedCombination, match="supported planar sums"):
        cf_add(strips, square_fn())


def test_product_of_strips_and_cells_clips_the_square():
    strips = cf_pullback(proj_x(), unit_interval())
    clipped = cf_mul(strips, square_fn())
    assert cf_integrate(clipped) == EulerDim(-1, 2)
    assert clipped(point2("1/2", 0)) == ONE
    assert clipped(point2(0, "1/2")) == EulerDim.zero()


def test_scale_and_equality_witness():
    f = unit_interval()
    g = cf_scale(EulerDim(2, 1), f)
    assert g(F(1, 2)) == EulerDim(2, 1)
    where, vf, vg = first_difference(f, g)
    assert f.pieces()[0].contains(where) and (vf, vg) == (ONE, EulerDim(2, 1))


def test_carrier_mismatch_is_rejected():
    with pytest.raises(RejectedInput, match="carrier mismatch"):
        cf_add(unit_interval(), finite_fn({"a": ONE}))


@pytest.mark.parametrize("seed", range(6))
def test_refinement_changes_nothing(seed):
    rng = np.random.default_rng(seed)
    f = random_weighted_fn(rng)
    refined = cf_refine(f, [F(1, 2), F(4, 3)])
    assert refined == f
    assert cf_integrate(refined) == cf_integrate(f)
    h = random_line_fn(rng)
    assert cf_refine(h, [F(1, 3), F(-5, 2)]) == h


# 3. Pushforward and pullback

def test_push_square_along_projection():
    pushed = cf_pushforward(proj_x(), square_fn())
    assert pushed.parts == (
        (LinePoint(F(0)), EulerDim(1, 1)),
        (OpenInterval(F(0), F(1)), EulerDim(1, 1)),
        (LinePoint(F(1)), EulerDim(1, 1)),
    )
    assert cf_integrate(pushed) == EulerDim(1, 2)


def test_push_triangle_boundary_along_projection():
    pushed = cf_pushforward(proj_x(), indicator_complex(polygon_boundary(UNIT_TRIANGLE)))
    assert pushed(F(0)) == EulerDim(1, 1)
    assert pushed(F(1, 2)) == EulerDim(2, 0)
    assert pushed(F(1)) == EulerDim(1, 0)


def test_constancy_check_accepts_genuine_fibers():
    f = random_weighted_fn(np.random.default_rng(3))
    assert cf_pushforward(proj_x(), f, check_constancy=True) == cf_pushforward(proj_x(), f)


def test_pull_interval_back_to_a_strip():
    pulled = cf_pullback(proj_x(), unit_interval())
    assert pulled(point2("1/2", 7)) == ONE
    assert pulled(point2(2, 0)) == EulerDim.zero()
    assert pulled.plane_kind == "strips"


def test_finite_pushforward_adds_fibers():
    f = finite_fn({"a": ONE, "b": EulerDim(2, 0), "c": EulerDim(1, 1)})
    pushed = cf_pushforward(finite_map({"a": "u", "b": "u", "c": "v"}, ["u", "v"]), f)
    assert pushed("u") == EulerDim(3, 0)
    assert pushed("v") == EulerDim(1, 1)


def test_finite_pushforward_rejects_labels_outside_the_domain():
    with pytest.raises(RejectedInput):
        cf_pushforward(finite_map({"a": "u"}), finite_fn({"z": ONE}))


def test_const_push_and_pull():
    assert cf_pushforward(const_map(), indicator_finite("abcd"))("pt") == EulerDim(4, 0)
    pulled = cf_pullback(const_map(Carrier.FINITE, ["a", "b"]), point_fn(EulerDim(2, 1)))
    assert pulled == finite_fn({"a": EulerDim(2, 1), "b": EulerDim(2, 1)})
    assert cf_pullback(const_map(Carrier.LINE), point_fn(ONE)) == constant_fn(Carrier.LINE, ONE)


def test_pushforward_along_the_wrong_kind_is_unsupported():
    with pytest.raises(UnsupportedCombination, match="supported kinds"):
        cf_pushforward(proj_x(), finite_fn({"a": ONE}))


def test_restrict_square_to_its_diagonal():
    diagonal = line_inclusion(Line2D(point2(0, 0), (1, 1)))
    restricted = cf_pullback(diagonal, square_fn())
    assert restricted.parts == (
        (LinePoint(F(0)), ONE),
        (OpenInterval(F(0), F(1)), ONE),
        (LinePoint(F(1)), ONE),
    )
    assert cf_integrate(restricted) == EulerDim(1, 1)


def test_line_inclusion_pushforward():
    diagonal = line_inclusion(Line2D(point2(0, 0), (1, 1)))
    pushed = cf_pushforward(diagonal, unit_interval())
    assert pushed(point2("1/2", "1/2")) == ONE
    assert cf_integrate(pushed) == EulerDim(-1, 1)
    ray = indicator_line(LineSet1D((OpenInterval(F(0), None),)))
    with pytest.raises(UnsupportedCombination):
        cf_pushforward(diagonal, ray)


def test_compose_finite_maps():
    first = finite_map({"a": "u", "b": "v"})
    second = finite_map({"u": 1, "v": 1})
    assert compose_maps(first, second).mapping == {"a": 1, "b": 1}
    with pytest.raises(UnsupportedCombination):
        compose_maps(proj_x(), first)


# 4. Fubini and the projection formula

@pytest.mark.parametrize("seed", range(6))
def test_fubini_along_projection(seed):
    f = random_weighted_fn(np.random.default_rng(seed))
    assert fubini_check(proj_x(), f).ok
    assert fubini_check(const_map(), f).ok


@pytest.mark.parametrize("seed", range(6))
def test_projection_formula_for_projection(seed):
    rng = np.random.default_rng(seed)
    report = projection_formula_check(proj_x(), random_weighted_fn(rng), random_line_fn(rng))
    assert report.ok, report.summary()


def test_projection_formula_for_finite_map():
    m = finite_map({"a": "u", "b": "u", "c": "v"}, ["u", "v"])
    g = finite_fn({"a": EulerDim(2, 1), "b": EulerDim(-1, 0), "c": EulerDim(3, 2)})
    h = finite_fn({"u": EulerDim(-1, 1), "v": EulerDim(1, 0)})
    report = projection_formula_check(m, g, h)
    assert report.ok, report.summary()
