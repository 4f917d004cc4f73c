import pytest

from src.constructible import cf_integrate, cf_pushforward, finite_fn, finite_map, projection_formula_check
from src.errors import RejectedInput
from src.io_formats import load_json, model_from_json
from src.models import (
    FiniteModel, ModelMap, all_functions, all_maps, compose_maps, indicator, model_incidence,
    model_integrate, model_pullback, model_pushforward, product_model, sk0_class,
)
from src.radon import inversion_check_finite
from src.semiring import EulerDim

VALUES = [EulerDim.zero(), EulerDim(1, 0), EulerDim(-1, 1), EulerDim(2, 2)]
PROJECTION_VALUES = [EulerDim.zero(), EulerDim(1, 0), EulerDim(2, 0), EulerDim(1, 1)]


@pytest.fixture
def small(data_dir) -> FiniteModel:
    return model_from_json(load_json(data_dir / "models" / "small.json"))


# 1. Classes

def test_counting_classes(small):
    assert sk0_class(small, "X") == EulerDim(4, 0)
    assert sk0_class(small, "Y") == EulerDim(2, 0)
    assert sk0_class(small, "Empty") == EulerDim.zero()
    assert sk0_class(small, "universe") == EulerDim(6, 0)


def test_model_needs_two_elements():
    with pytest.raises(RejectedInput):
        FiniteModel(("a",))


def test_maps_must_be_total():
    with pytest.raises(RejectedInput, match="not total"):
        FiniteModel(("a", "b"), {"X": {"a", "b"}}, {"f": ModelMap("X", "X", (("a", "a"),))})


# 2. Pushforward and pullback

def test_constant_map_collects_everything(small):
    pushed = model_pushforward(small, "point", indicator(small, "X"))
    assert pushed == finite_fn({"a": EulerDim(4, 0)})


def test_two_to_one_map(small):
    pushed = model_pushforward(small, "f", indicator(small, "X"))
    assert pushed == finite_fn({"u": EulerDim(2, 0), "v": EulerDim(2, 0)})
    assert cf_integrate(pushed) == sk0_class(small, "X")


def test_pullback_of_codomain_indicator(small):
    assert model_pullback(small, "f", indicator(small, "Y")) == indicator(small, "X")


def test_carrier_mismatch(small):
    with pytest.raises(RejectedInput, match="carrier mismatch"):
        model_pushforward(small, "f", finite_fn({"u": EulerDim.one()}))


def test_integrate_over_a_subset(small):
    g = finite_fn({"a": EulerDim(2, 1), "u": EulerDim(5, 0)})
    assert model_integrate(small, "X", g) == EulerDim(2, 1)


def test_compose_in_the_model(small):
    composed = compose_maps(small, "point", "f")
    assert composed.mapping == {x: "u" for x in "abcd"}
    with pytest.raises(RejectedInput, match="cannot compose"):
        compose_maps(small, "f", "point")


# 3. Exhaustive sweeps over small sets

def test_functoriality_exhaustive():
    X, Y, Z = ["a", "b", "c"], ["u", "v"], ["p", "q"]
    g = finite_fn({"a": EulerDim(2, 1), "b": EulerDim(-1, 0), "c": EulerDim(1, 2)})
    for f1 in all_maps(X, Y):
        for f2 in all_maps(Y, Z):
            composed = finite_map({x: f2[f1[x]] for x in X})
            step = cf_pushforward(finite_map(f2), cf_pushforward(finite_map(f1), g))
            assert cf_pushforward(composed, g) == step

@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_projection_formula_exhaustive(size):
    X, Y = ["a", "b", "c", "d"][:size], ["u", "v"]
    gs = list(all_functions(X, PROJECTION_VALUES))
    hs = list(all_functions(Y, PROJECTION_VALUES))
    for f in all_maps(X, Y):
        m = finite_map(f, Y)
        for g in gs:
            for h in hs:
                assert projection_formula_check(m, g, h).ok


def test_pullback_contra_functoriality_exhaustive():
    W, X, Y = ["w0", "w1", "w2"], ["x0", "x1", "x2"], ["y0", "y1"]
    subsets = {"W": W, "X": X, "Y": Y}
    ks = list(all_functions(Y, VALUES))
    for h in all_maps(W, X):
        for f in all_maps(X, Y):
            m = FiniteModel(tuple(W + X + Y), subsets,
                            {"h": ModelMap("W", "X", tuple(h.items())),
                             "f": ModelMap("X", "Y", tuple(f.items()))})
            m = m.with_map("fh", compose_maps(m, "h", "f"))
            for k in ks:
                assert model_pullback(m, "fh", k) == model_pullback(m, "h", model_pullback(m, "f", k))


def test_product_projections():
    m = product_model(["x0", "x1"], ["y0", "y1", "y2"])
    assert sk0_class(m, "XxY") == EulerDim(6, 0)
    h = finite_fn({"y0": EulerDim(1, 1), "y2": EulerDim(-2, 0)})
    back = model_pushforward(m, "pr2", model_pullback(m, "pr2", h))
    assert back == finite_fn({"y0": EulerDim(2, 1), "y2": EulerDim(-4, 0)})
    assert model_pushforward(m, "pr1", indicator(m, "XxY")) == finite_fn(
        {"x0": EulerDim(3, 0), "x1": EulerDim(3, 0)})


def test_cycle_relation_inverts(data_dir):
    m = model_from_json(load_json(data_dir / "models" / "cycle.json"))
    report = inversion_check_finite(model_incidence(m, "S", "P", "P"), trials=20, name="S")
    assert report.ok
    assert (report.lam, report.theta) == (EulerDim.zero(), EulerDim(1, 0))


def test_relation_must_be_binary(small):
    with pytest.raises(RejectedInput, match="binary relation"):
        model_incidence(small, "X", "X", "Y")
