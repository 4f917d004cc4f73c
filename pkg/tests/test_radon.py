import numpy as np
import pytest
from hypothesis import given, strategies as st

from src.axioms import sample_euler_dim
from src.constructible import cf_add, cf_eval, cf_integrate, cf_scale, finite_fn, indicator_finite
from src.errors import HypothesesViolated, RejectedInput
from src.geometry import CircleSet, mu_circle, point2
from src.incidence import complete_bipartite, fano, incidence, pg2, transpose
from src.io_formats import incidence_from_json, load_json, scene_from_json
from src.radon import (
    PolygonScene, double_radon_at, fiber_classes, fit_lambda_theta, global_conditions,
    inversion_check_finite, inversion_check_plane, inversion_rhs, pencil_profile,
    plane_inversion_rhs, projective_class, radon_finite, random_finite_fn, symbolic_inversion,
    theta_alternatives,
)
from src.scenes import builtin_scene, split_samples
from src.semiring import EulerDim, a_add


# 1. Incidence structures

def test_projective_planes_have_the_right_size():
    for q in (2, 3, 5):
        inc = pg2(q)
        n = q * q + q + 1
        assert len(inc.X) == len(inc.Y) == n
        m = inc.matrix()
        assert (m.sum(axis=0) == q + 1).all() and (m.sum(axis=1) == q + 1).all()


def test_pg2_needs_a_prime():
    with pytest.raises(RejectedInput):
        pg2(4)


def test_incidence_rejects_pairs_outside():
    with pytest.raises(RejectedInput):
        incidence(["a"], ["b"], [("a", "c")])


# 2. Finite transform and inversion

def test_fano_transform_of_the_indicator():
    inc = fano()
    r = radon_finite(inc, indicator_finite(inc.X))
    assert all(cf_eval(r, y) == EulerDim(3, 0) for y in inc.Y)


@pytest.mark.parametrize("q,theta", [(2, EulerDim(2, 0)), (3, EulerDim(3, 0))])
def test_projective_plane_inversion(q, theta):
    inc = pg2(q)
    lam, th = fit_lambda_theta(fiber_classes(inc, transpose(inc)), inc.X)
    assert (lam, th) == (EulerDim(1, 0), theta)
    report = inversion_check_finite(inc, trials=30, seed=5, name=f"pg2q={q}")
    assert report.ok and report.hypotheses_ok
    assert report.summary() == f"pg2q={q}: λ=(1, 0) θ={theta.render()} OK (30 trials)"


def test_complete_bipartite_has_theta_zero():
    report = inversion_check_finite(complete_bipartite(2, 3), trials=5)
    assert not report.hypotheses_ok
    assert "θ = 0" in report.message
    with pytest.raises(HypothesesViolated):
        report.raise_for_failure()
    assert not global_conditions(complete_bipartite(2, 3)).holds


def test_unequal_fibers_violate_the_hypotheses():
    inc = incidence(["a", "b", "c"], ["L", "M"], [("a", "L"), ("b", "L"), ("b", "M"), ("c", "M")])
    with pytest.raises(HypothesesViolated, match="fiber classes differ"):
        fit_lambda_theta(fiber_classes(inc, transpose(inc)), inc.X)


def test_triangle_of_lines(data_dir):
    inc = incidence_from_json(load_json(data_dir / "incidences" / "triangle-lines.json"))
    cond = global_conditions(inc)
    assert cond.holds and (cond.z1, cond.z2) == (EulerDim(1, 0), EulerDim(1, 0))
    g = finite_fn({"A": EulerDim(2, 1), "B": EulerDim(-1, 0)})
    assert inversion_check_finite(inc, gs=[g]).ok


def test_theta_is_not_unique_but_the_formula_is():
    alternatives = theta_alternatives(EulerDim(1, 1), EulerDim(3, 1))
    assert alternatives == [EulerDim(2, 0), EulerDim(2, 1)]
    g_value, total = EulerDim(1, 0), EulerDim(5, 1)
    rhs = {inversion_rhs(t, EulerDim(1, 1), g_value, total) for t in alternatives}
    assert rhs == {EulerDim(7, 2)}


euler_dims = st.one_of(
    st.just(EulerDim.zero()),
    st.builds(EulerDim, st.integers(-6, 6), st.integers(0, 4)),
)


@given(euler_dims, euler_dims, euler_dims, euler_dims)
def test_every_theta_choice_gives_the_same_right_hand_side(lam, theta, g_value, rest):
    g_integral = a_add(g_value, rest)
    alternatives = theta_alternatives(lam, a_add(theta, lam))
    assert theta in alternatives
    for other in alternatives:
        assert a_add(other, lam) == a_add(theta, lam)
        assert inversion_rhs(other, lam, g_value, g_integral) == inversion_rhs(theta, lam, g_value, g_integral)


@given(st.integers(2, 7), euler_dims, euler_dims)
def test_symbolic_formula_is_independent_of_theta(n, g_value, rest):
    g_integral = a_add(g_value, rest)
    lam, theta = projective_class(n - 2), EulerDim((-1) ** (n + 1), n - 1)
    expected = symbolic_inversion(n, g_value, g_integral)
    for other in theta_alternatives(lam, a_add(theta, lam)):
        assert inversion_rhs(other, lam, g_value, g_integral) == expected


def linearity_incidences(data_dir):
    return [fano(), pg2(3), complete_bipartite(2, 3),
            incidence_from_json(load_json(data_dir / "incidences" / "triangle-lines.json"))]


def test_radon_is_linear(data_dir, rng):
    for inc in linearity_incidences(data_dir):
        for _ in range(25):
            g1, g2 = random_finite_fn(inc.X, rng), random_finite_fn(inc.X, rng)
            c = sample_euler_dim(rng)
            assert radon_finite(inc, cf_add(g1, g2)) == cf_add(radon_finite(inc, g1), radon_finite(inc, g2))
            assert radon_finite(inc, cf_scale(c, g1)) == cf_scale(c, radon_finite(inc, g1))



# 3. Planar scenes

def square_scene():
    return PolygonScene(builtin_scene("square"), name="square")


@pytest.mark.parametrize("p,expected", [
    (("1/2", "1/2"), EulerDim(0, 2)),
    ((2, 2), EulerDim(1, 2)),
    ((0, "1/2"), EulerDim(0, 2)),
    ((0, 0), EulerDim(0, 2)),
    (("-3", "1/2"), EulerDim(1, 2)),
])
def test_square_double_transform(p, expected):
    scene = square_scene()
    assert double_radon_at(p, scene) == expected
    assert plane_inversion_rhs(p, scene) == expected


def test_pencil_profile_through_exterior_point():
    profile = pencil_profile(point2(2, 2), square_scene(), check_constancy=True)
    assert cf_integrate(profile) == EulerDim(1, 2)
    assert cf_eval(profile, (1, 1)) == EulerDim(1, 1)
    assert cf_eval(profile, (1, 0)) == EulerDim.zero()


@pytest.mark.parametrize("name", ["square", "triangle", "pentagon", "lshape"])
def test_plane_inversion_on_builtin_scenes(name):
    scene = PolygonScene(builtin_scene(name), name=name)
    inside, outside = split_samples(scene.Z, 4, np.random.default_rng(11))
    report = inversion_check_plane(scene, inside + outside)
    assert report.ok, report.failures
    assert report.summary() == f"{name}: {len(inside + outside)}/{len(inside + outside)} points OK"


def test_scene_file_samples(data_dir):
    scene = scene_from_json(load_json(data_dir / "scenes" / "triangle.json"))
    report = inversion_check_plane(scene)
    assert len(report.rows) == 5 and report.ok


def test_weighted_scene(data_dir):
    scene = scene_from_json(load_json(data_dir / "scenes" / "weighted-triangle.json"))
    assert cf_integrate(scene.weight_fn()) == EulerDim(6, 4)
    points = [("1/3", "1/3"), (0, 0), (1, 0), ("1/2", "1/2"), (3, 3), ("-1", "1/2")]
    assert inversion_check_plane(scene, points).ok


# 4. Class-level formulas

@pytest.mark.parametrize("n,expected", [
    (0, EulerDim(1, 0)), (1, EulerDim(0, 1)), (2, EulerDim(1, 2)), (3, EulerDim(0, 3)),
])
def test_projective_class(n, expected):
    assert projective_class(n) == expected


def test_projective_line_is_the_direction_circle():
    assert mu_circle(CircleSet.full()) == projective_class(1)


def test_symbolic_inversion():
    assert symbolic_inversion(2, EulerDim.one(), EulerDim(1, 2)) == EulerDim(0, 2)
    assert symbolic_inversion(2, EulerDim.zero(), EulerDim(1, 2)) == EulerDim(1, 2)
    assert symbolic_inversion(3, EulerDim.one(), EulerDim(1, 3)) == EulerDim(1, 4)
    with pytest.raises(RejectedInput):
        symbolic_inversion(1, EulerDim.one(), EulerDim.one())
