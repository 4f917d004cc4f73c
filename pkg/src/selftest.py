"""
Self-Test Runner
================
Runs every property suite of the toolkit on seeded random inputs and
collects one row per suite into a pandas DataFrame:

  suite | module | status | trials | detail | seconds

status is PASS, FAIL or VACUOUS. The `seconds` column is timing only and is
left out of the deterministic console rendering.
"""
from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from src.axioms import (
    SEMIRING_E, SEMIRING_INT, SEMIRING_LITERAL_PAIRS, STANDARD_SUITES, SEMIRING_A,
    axiom_suite, homomorphism_suite, sample_euler_dim, sample_literal_pair, sample_ring_e,
)
from src.config import AXIOM_TRIALS, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRIALS, PRESBURGER_WINDOW
from src.constructible import (
    SEMIRING_LINE, cf_add, cf_integrate, cf_mul, cf_pullback, cf_pushforward, cf_refine, const_map,
    finite_fn, finite_map, fubini_check, projection_formula_check, proj_x, weighted_complex,
)
from src.errors import EulerCalcError, RejectedInput
from src.geometry import (
    AffineMap, CircleSet, affine_image, barycentric_subdivide, mu_circle, mu_complex, refine_vertical,
)
from src.incidence import fano, pg2
from src.models import all_functions, all_maps, model_pullback, model_pushforward, indicator, product_model, sk0_class
from src.presburger import PRES_OPS, PresburgerSet, Progression, pres_class, pres_normalize, pres_ops, reflect, translate
from src.radon import PolygonScene, inversion_check_finite, inversion_check_plane, projective_class
from src.scenes import (
    CONVEX_SCENES, builtin_scene, random_grid_complex, random_line_fn, random_rational,
    random_weighted_fn, random_weights, split_samples,
)
from src.semiring import EulerDim, a_add, a_mul, e_eval_chi, euler_part

COLUMNS = ["suite", "module", "status", "trials", "detail", "seconds"]
PASS, FAIL, VACUOUS = "PASS", "FAIL", "VACUOUS"

Row = Dict[str, object]
Log = Callable[[str], None]


def _row(suite: str, module: str, ok: bool, trials: int, detail: str) -> Row:
    return {"suite": suite, "module": module, "status": PASS if ok else FAIL,
            "trials": trials, "detail": detail}


# ── Suites ───────────────────────────────────────────────────────────────────

def _axioms(rng, trials, samples, seed) -> List[Row]:
    n = min(AXIOM_TRIALS, trials * 100)
    rows = []
    for S, sampler in STANDARD_SUITES:
        report = axiom_suite(S, sampler, n, seed)
        rows.append(_row(f"axioms {S.name}", "semiring", report.ok, n, report.summary()))
    report = axiom_suite(SEMIRING_LITERAL_PAIRS, sample_literal_pair, n, seed)
    expected = not report.ok and report.law == "zero_absorbs"
    detail = report.summary() if not report.ok else "0x = 0 was never violated"
    rows.append(_row("literal pairs fail 0x = 0", "semiring", expected, n, detail))
    return rows


def _homomorphisms(rng, trials, samples, seed) -> List[Row]:
    rows = []
    for name, src, phi, sampler in (
        ("A -> Z, (a, b) -> a", SEMIRING_A, euler_part, sample_euler_dim),
        ("E -> Z, x -> -1", SEMIRING_E, e_eval_chi, sample_ring_e),
    ):
        report = homomorphism_suite(name, src, SEMIRING_INT, phi, sampler, trials, seed)
        rows.append(_row(f"homomorphism {name}", "semiring", report.ok, trials, report.summary()))
    return rows


def _projective(rng, trials, samples, seed) -> List[Row]:
    bad = [n for n in range(1, 7)
           if a_add(projective_class(n - 1), EulerDim((-1) ** n, n)) != projective_class(n)]
    circle = mu_circle(CircleSet.full())
    ok = not bad and circle == projective_class(1)
    detail = (f"[P^n] = [P^(n-1)] + [R^n] for n <= 6, mu(RP^1) = {circle.render()}"
              if ok else f"cell decomposition breaks at n = {bad[:1]}, mu(RP^1) = {circle.render()}")
    return [_row("projective classes", "radon", ok, 7, detail)]


def _refinement(rng, trials, samples, seed) -> List[Row]:
    for t in range(trials):
        c = random_grid_complex(rng)
        mu = mu_complex(c)
        cuts = [random_rational(rng, Fraction(0), Fraction(3), den=3) for _ in range(2)]
        for name, refined in (("barycentric", barycentric_subdivide(c)), ("vertical", refine_vertical(c, cuts))):
            if mu_complex(refined) != mu:
                return [_row("refinement invariance", "geometry", False, trials,
                             f"{name} subdivision of trial {t}: {mu_complex(refined).render()} != {mu.render()}")]
    return [_row("refinement invariance", "geometry", True, trials, "mu unchanged")]


def _first_fubini_failure(rng, scenes: int) -> Optional[str]:
    for t in range(scenes):
        f = random_weighted_fn(rng)
        for m in (proj_x(), const_map()):
            report = fubini_check(m, f)
            if not report.ok:
                return f"{m.kind.value} on scene {t}: {report.summary()}"
    return None


def _fubini(rng, trials, samples, seed) -> List[Row]:
    scenes = min(trials, 20)
    failure = _first_fubini_failure(rng, scenes)
    rows = [_row("fubini planar", "constructible", failure is None, scenes,
                 failure or "proj-x and const on random scenes")]

    X, Y, Z = ["x0", "x1", "x2", "x3", "x4"], ["y0", "y1", "y2"], ["z0", "z1"]
    hs = list(all_maps(Y, Z))
    checked = 0
    for f in all_maps(X, Y):
        g = finite_fn({x: sample_euler_dim(rng) for x in X})
        pushed = cf_pushforward(finite_map(f, Y), g)
        for h in hs:
            composed = finite_map({x: h[f[x]] for x in X}, Z)
            lhs = cf_pushforward(composed, g)
            rhs = cf_pushforward(finite_map(h, Z), pushed)
            checked += 1
            if lhs != rhs:
                rows.append(_row("functoriality finite", "constructible", False, checked,
                                 f"f={f} h={h}: {lhs!r} != {rhs!r}"))
                return rows
            k = finite_fn({z: sample_euler_dim(rng) for z in Z})
            back = cf_pullback(composed, k)
            if back != cf_pullback(finite_map(f, Y), cf_pullback(finite_map(h, Z), k)):
                rows.append(_row("functoriality finite", "constructible", False, checked,
                                 f"f={f} h={h}: pullback of {k!r} does not contra-compose"))
                return rows
    rows.append(_row("functoriality finite", "constructible", True, checked,
                     "(h∘f)_! = h_! f_! and (h∘f)^* = f^* h^* for |X|=5, |Y|=3"))
    return rows


PROJECTION_VALUES = (EulerDim.zero(), EulerDim(1, 0), EulerDim(2, 0), EulerDim(1, 1))


@lru_cache(maxsize=None)
def _first_projection_failure() -> Tuple[int, Optional[str]]:
    """Every map X -> Y with |X| <= 4, |Y| = 2, and every g, h with PROJECTION_VALUES."""
    Y = ["u", "v"]
    hs = list(all_functions(Y, PROJECTION_VALUES))
    n = 0
    for size in range(1, 5):
        X = ["a", "b", "c", "d"][:size]
        gs = list(all_functions(X, PROJECTION_VALUES))
        for f in all_maps(X, Y):
            m = finite_map(f, Y)
            for g in gs:
                for h in hs:
                    n += 1
                    report = projection_formula_check(m, g, h)
                    if not report.ok:
                        return n, f"f={f}: {report.summary()}"
    return n, None


def _projection_formula(rng, trials, samples, seed) -> List[Row]:
    n, failure = _first_projection_failure()
    rows = [_row("projection formula finite", "constructible", failure is None, n,
                 failure or "every map X -> Y with |X| <= 4, |Y| = 2")]

    instances = min(trials, 20)
    for t in range(instances):
        report = projection_formula_check(proj_x(), random_weighted_fn(rng), random_line_fn(rng))
        if not report.ok:
            rows.append(_row("projection formula planar", "constructible", False, instances,
                             f"instance {t}: {report.summary()}"))
            return rows
    rows.append(_row("projection formula planar", "constructible", True, instances, "proj-x on random scenes"))
    return rows


def _partition(rng, trials, samples, seed) -> List[Row]:
    for t in range(trials):
        for f in (random_line_fn(rng), random_weighted_fn(rng)):
            cuts = [random_rational(rng, Fraction(-1), Fraction(4), den=4) for _ in range(2)]
            before, after = cf_integrate(f), cf_integrate(cf_refine(f, cuts))
            if before != after:
                return [_row("partition independence", "constructible", False, trials,
                             f"{f.carrier.value} trial {t}, cuts {cuts}: {after.render()} != {before.render()}")]
    return [_row("partition independence", "constructible", True, trials, "integral unchanged by refinement")]


def _cell_points(fns) -> List:
    """Every vertex and every cell centroid of the given planar functions."""
    points = set()
    for fn in fns:
        for cell in fn.pieces():
            points.update(cell)
            points.add(tuple(sum(q[i] for q in cell) / len(cell) for i in (0, 1)))
    return sorted(points)


def _planar_algebra(rng, trials, samples, seed) -> List[Row]:
    instances = min(trials, 10)
    shift = AffineMap(1, 0, 0, 1, "1/3", "-1/4")
    failure: Optional[str] = None
    for t in range(instances):
        f = random_weighted_fn(rng)
        c = affine_image(random_grid_complex(rng), shift)
        g = weighted_complex(c, random_weights(rng, len(c.cells)))
        total, product = cf_add(f, g), cf_mul(f, g)
        if cf_integrate(total) != a_add(cf_integrate(f), cf_integrate(g)):
            failure = f"scene {t}: ∫(f+g) = {cf_integrate(total).render()}"
            break
        bad = [p for p in _cell_points((f, g))
               if total(p) != a_add(f(p), g(p)) or product(p) != a_mul(f(p), g(p))]
        if bad:
            failure = f"scene {t}: f+g or f·g wrong at {bad[0]}"
            break
    rows = [_row("planar sum and product", "constructible", failure is None, instances,
                 failure or "pointwise on overlapping random scenes")]
    n = min(1000, trials * 10)
    report = axiom_suite(SEMIRING_LINE, random_line_fn, n, seed)
    rows.append(_row(f"axioms {SEMIRING_LINE.name}", "constructible", report.ok, n, report.summary()))
    return rows



def _models(rng, trials, samples, seed) -> List[Row]:
    m = product_model(["p", "q", "r"], ["s", "t"])
    one = EulerDim.one()
    h = indicator(m, "X", one)
    back = model_pushforward(m, "pr1", model_pullback(m, "pr1", h))
    ok = all(back(x) == EulerDim.count(2) for x in ("p", "q", "r")) and sk0_class(m, "XxY") == EulerDim.count(6)
    return [_row("finite model classes", "models", ok, 1,
                 "pr1_! pr1^* 1_X = (2, 0) and [X x Y] = (6, 0)" if ok else f"got {back!r}")]


def _finite_inversion(rng, trials, samples, seed) -> List[Row]:
    rows = []
    for name, inc, theta in (("fano", fano(), EulerDim(2, 0)), ("pg2q=3", pg2(3), EulerDim(3, 0))):
        report = inversion_check_finite(inc, trials=trials, seed=seed, name=name)
        ok = report.ok and report.lam == EulerDim(1, 0) and report.theta == theta
        rows.append(_row(f"finite inversion {name}", "radon", ok, trials, report.summary()))
    return rows


def _plane_inversion(rng, trials, samples, seed) -> List[Row]:
    rows = []
    for name in CONVEX_SCENES + ("lshape",):
        c = builtin_scene(name)
        inside, outside = split_samples(c, samples, rng)
        report = inversion_check_plane(PolygonScene(c, name=name), inside + outside)
        rows.append(_row(f"planar inversion {name}", "radon", report.ok, len(report.rows), report.summary()))
    c = random_grid_complex(rng)
    scene = PolygonScene(c, weighted_complex(c, random_weights(rng, len(c.cells))), name="weighted grid")
    inside, outside = split_samples(scene.Z, samples, rng)
    report = inversion_check_plane(scene, inside + outside)
    rows.append(_row("planar inversion weighted", "radon", report.ok, len(report.rows), report.summary()))
    return rows


def _random_presburger(rng) -> PresburgerSet:
    items: list = [int(x) for x in rng.integers(-60, 61, size=int(rng.integers(0, 5)))]
    for _ in range(int(rng.integers(0, 3))):
        d = int(rng.integers(1, 7))
        lo = None if rng.random() < 0.5 else int(rng.integers(-80, 81))
        hi = None if rng.random() < 0.5 else int(rng.integers(-80, 81))
        items.append(Progression(int(rng.integers(0, d)), d, lo, hi))
    return pres_normalize(items)


_MASK_OPS = {
    "union": lambda a, b: a | b,
    "intersect": lambda a, b: a & b,
    "difference": lambda a, b: a & ~b,
}


def _presburger(rng, trials, samples, seed) -> List[Row]:
    lo, hi = PRESBURGER_WINDOW
    pairs = trials * 5
    for t in range(pairs):
        a, b = _random_presburger(rng), _random_presburger(rng)
        ma, mb = a.window_mask(lo, hi), b.window_mask(lo, hi)
        for op in PRES_OPS:
            out = pres_ops(a, b, op)
            if not np.array_equal(out.window_mask(lo, hi), _MASK_OPS[op](ma, mb)):
                return [_row("presburger oracle", "models", False, pairs,
                             f"pair {t}: {a.render()} {op} {b.render()} gave {out.render()}")]
        c = int(rng.integers(-50, 51))
        if pres_class(translate(a, c)) != pres_class(a) or pres_class(reflect(a)) != pres_class(a):
            return [_row("presburger oracle", "models", False, pairs,
                         f"class of {a.render()} changes under translation by {c} or reflection")]
    return [_row("presburger oracle", "models", True, pairs, f"window [{lo}, {hi}], classes invariant")]


SUITES = (
    ("axioms", _axioms),
    ("homomorphisms", _homomorphisms),
    ("projective", _projective),
    ("refinement", _refinement),
    ("fubini", _fubini),
    ("projection", _projection_formula),
    ("partition", _partition),
    ("planar algebra", _planar_algebra),
    ("models", _models),
    ("finite inversion", _finite_inversion),
    ("plane inversion", _plane_inversion),
    ("presburger", _presburger),
)


def _injected_fault(seed: int, trials: int) -> Row:
    """The literal Z x N pairs, checked as if they were a semiring."""
    n = max(1, min(AXIOM_TRIALS, trials * 100))
    report = axiom_suite(SEMIRING_LITERAL_PAIRS, sample_literal_pair, n, seed)
    return _row("injected fault: literal pairs as a semiring", "semiring", report.ok, n, report.summary())


# ── Runner ───────────────────────────────────────────────────────────────────

def run_selftest(trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
                 samples: int = DEFAULT_SAMPLES, inject_fault: bool = False,
                 log: Log = print) -> pd.DataFrame:
    """Run every suite and return the summary table."""
    if trials < 0 or samples < 0:
        raise RejectedInput(f"trials and samples must be >= 0, got {trials} and {samples}")
    log(f"🔎 Running self-test (trials={trials}, seed={seed}, samples={samples})")
    rows: List[Row] = []
    if trials == 0:
        log("⚠️  --trials 0: every suite passes vacuously")
        rows = [{"suite": name, "module": "-", "status": VACUOUS, "trials": 0,
                 "detail": "no trials run", "seconds": 0.0} for name, _ in SUITES]
        return pd.DataFrame(rows, columns=COLUMNS)

    rng = np.random.default_rng(seed)
    for name, suite in SUITES:
        start = time.perf_counter()
        try:
            found = suite(rng, trials, samples, seed)
        except EulerCalcError as exc:
            found = [_row(name, "-", False, trials, f"{type(exc).__name__}: {exc}")]
        elapsed = round(time.perf_counter() - start, 3)
        for row in found:
            row["seconds"] = elapsed
            mark = "✅" if row["status"] == PASS else "❌"
            log(f"{mark} {row['suite']}: {row['detail']}")
        rows.extend(found)
    if inject_fault:
        start = time.perf_counter()
        row = _injected_fault(seed, trials)
        row["seconds"] = round(time.perf_counter() - start, 3)
        log(f"{'✅' if row['status'] == PASS else '❌'} {row['suite']}: {row['detail']}")
        rows.append(row)
    return pd.DataFrame(rows, columns=COLUMNS)


def all_passed(summary: pd.DataFrame) -> bool:
    return bool((summary["status"] != FAIL).all())


def failures(summary: pd.DataFrame) -> pd.DataFrame:
    return summary[summary["status"] == FAIL]


def render_summary(summary: pd.DataFrame) -> str:
    """Console table without the timing column, so output is byte-stable."""
    table = summary.drop(columns=["seconds"]).to_string(index=False)
    passed = int((summary["status"] == PASS).sum())
    vacuous = int((summary["status"] == VACUOUS).sum())
    tail = f"{passed}/{len(summary)} suites passed"
    if vacuous:
        tail += f" ({vacuous} vacuous)"
    return f"{table}\n{tail}"
