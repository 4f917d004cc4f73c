import json
from fractions import Fraction

import numpy as np
import pytest

from src.constructible import (
    Carrier, cf_integrate, cf_pullback, cf_pushforward, constant_fn, finite_fn, finite_map,
    indicator_circle, proj_x,
)
from src.errors import RejectedInput
from src.geometry import CirclePoint, CircleSet, Line2D, LinePoint, LineSet1D, OpenArc, OpenInterval, point2
from src.incidence import fano
from src.io_formats import (
    complex_from_json, complex_to_json, dumps, fn_from_json, fn_to_json, incidence_from_json,
    incidence_to_json, line_from_json, line_to_json, load_json, map_from_json, map_to_json,
    model_from_json, presburger_from_json, presburger_op_from_json, presburger_to_json,
    scene_from_json, set_from_json, set_to_json,
)
from src.scenes import builtin_scene, random_line_fn, random_weighted_fn
from src.semiring import EulerDim


def reparsed(f):
    return fn_from_json(json.loads(dumps(fn_to_json(f))))


# 1. Functions survive a trip through JSON text

@pytest.mark.parametrize("seed", range(4))
def test_planar_and_line_functions(seed):
    rng = np.random.default_rng(seed)
    for f in (random_weighted_fn(rng), random_line_fn(rng)):
        assert reparsed(f) == f


def test_strip_circle_and_finite_functions():
    strips = cf_pullback(proj_x(), constant_fn(Carrier.LINE, EulerDim(2, 1)))
    arcs = indicator_circle(CircleSet((CirclePoint((1, 1)), OpenArc((1, 1), (-1, 2)))), EulerDim(-1, 3))
    labels = finite_fn({"a": EulerDim(1, 0), 7: EulerDim(0, 2)})
    for f in (strips, arcs, labels):
        assert reparsed(f) == f


def test_function_files(data_dir):
    f = fn_from_json(load_json(data_dir / "functions" / "square-indicator.json"))
    assert cf_integrate(f) == EulerDim(1, 2)
    g = fn_from_json(load_json(data_dir / "functions" / "finite.json"))
    assert g("c") == EulerDim(1, 1)


# 2. Other objects

def test_complex_and_sets():
    c = builtin_scene("lshape")
    assert complex_from_json(complex_to_json(c)) == c
    s = LineSet1D.from_pieces([LinePoint(Fraction(-1, 2)), OpenInterval(Fraction(0), None)])
    assert set_from_json(set_to_json(s)) == s
    full = CircleSet.full()
    assert set_from_json(set_to_json(full)) == full
    line = Line2D(point2("1/3", 2), (-2, 1))
    assert line_from_json(line_to_json(line)) == line


def test_maps_and_incidences(data_dir):
    for name in ("proj-x", "const", "collapse", "diagonal"):
        m = map_from_json(load_json(data_dir / "maps" / f"{name}.json"))
        assert map_from_json(map_to_json(m)) == m
    inc = fano()
    assert incidence_from_json(incidence_to_json(inc)) == inc


def test_finite_map_keys_match_integer_labels():
    f = fn_from_json({"carrier": "finite", "parts": [{"piece": 1, "value": [1, 0]},
                                                     {"piece": "b", "value": [2, 1]}]})
    m = map_from_json({"kind": "finite", "table": {"1": "u", "b": "u", "-3": "v"}})
    assert dict(m.table) == {1: "u", "b": "u", -3: "v"}
    assert cf_pushforward(m, f) == finite_fn({"u": EulerDim(3, 1)})
    back = cf_pullback(m, finite_fn({"u": EulerDim(1, 0), "v": EulerDim(2, 0)}))
    assert back(1) == EulerDim(1, 0) and back(-3) == EulerDim(2, 0)
    assert map_from_json(json.loads(dumps(map_to_json(m)))) == m
    assert dict(map_from_json({"kind": "finite", "table": {"01": "u"}}).table) == {"01": "u"}


def test_string_labels_that_read_as_integers_are_refused():
    with pytest.raises(RejectedInput, match="reads back as an integer"):
        map_to_json(finite_map({"7": "u"}))


def test_scene_and_model_files(data_dir):
    scene = scene_from_json(load_json(data_dir / "scenes" / "triangle.json"))
    assert scene.name == "triangle" and len(scene.samples) == 5
    m = model_from_json(load_json(data_dir / "models" / "small.json"))
    assert m.map("point").mapping == {"a": "a", "b": "a", "c": "a", "d": "a"}


def test_presburger_files(data_dir):
    s = presburger_from_json(load_json(data_dir / "presburger" / "bounded.json"))
    assert presburger_from_json(presburger_to_json(s)) == s
    a, b, op = presburger_op_from_json(load_json(data_dir / "presburger" / "two-and-three.json"))
    assert op == "intersect" and a.render() == "0 mod 2 [-inf, +inf]"


# 3. Rejections

@pytest.mark.parametrize("raw,match", [
    ({"carrier": "line", "parts": [{"piece": {"t": "iv", "a": 0.5}, "value": [1, 0]}]}, "invalid function"),
    ({"carrier": "line", "parts": [], "colour": "red"}, "invalid function"),
    ({"carrier": "finite", "parts": [{"piece": "a", "value": [1, "bot"]}]}, "bottom"),
    ({"carrier": "plane", "vertices": [[0, 0]], "parts": [{"piece": {"t": "e", "i": 0, "j": 1}, "value": [1, 0]}]},
     "missing vertex"),
    ({"carrier": "line", "parts": [{"piece": {"t": "iv", "a": 0, "b": 2}, "value": [1, 0]},
                                   {"piece": {"t": "iv", "a": 1, "b": 3}, "value": [1, 0]}]}, "overlap"),
])
def test_bad_functions(raw, match):
    with pytest.raises(RejectedInput, match=match):
        fn_from_json(raw)


def test_overlapping_planar_cells():
    raw = {"carrier": "plane", "vertices": [[0, 0], [2, 0], [0, 2], ["1/2", "1/2"]],
           "parts": [{"piece": {"t": "f", "i": 0, "j": 1, "k": 2}, "value": [1, 0]},
                     {"piece": {"t": "v", "i": 3}, "value": [1, 0]},
                     {"piece": {"t": "e", "i": 0, "j": 3}, "value": [1, 0]}]}
    with pytest.raises(RejectedInput, match="overlap"):
        fn_from_json(raw)


def test_load_json_errors(tmp_path):
    with pytest.raises(RejectedInput, match="no such file"):
        load_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(RejectedInput, match="malformed JSON"):
        load_json(bad)
    assert load_json('{"carrier": "finite"}') == {"carrier": "finite"}
