"""
Command-Line Front-End
======================
    python euler.py <subcommand> [input] [flags]

Subcommands: mu, integrate, push, pull, radon, models, presburger, selftest.
`input` is a JSON file or inline JSON text; --builtin replaces it with one
of the built-in incidences or scenes.

Results go to stdout. Status lines and diagnostics go to stderr, so that
`--format json` output stays machine-parseable. A failure exits with the code
its error carries: 2 rejected input, 3 unsupported combination, 4 hypotheses
violated, 5 identity failure.
"""
import argparse
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, TextIO, Tuple

import numpy as np

from src.config import (
    DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRIALS, EXIT_OK, OUTPUT_FORMAT, OUTPUT_FORMATS,
)
from src.constructible import (
    Carrier, ConstructibleFn, cf_eval, cf_integrate, cf_pullback, cf_pushforward,
    indicator_finite, render_fn,
)
from src.errors import EulerCalcError, IdentityFailure, RejectedInput
from src.geometry import LineSet1D, direction, mu_1d, mu_circle, mu_complex, point2, rat, render_rat
from src.incidence import FiniteIncidence, complete_bipartite, fano, pg2
from src.io_formats import (
    dumps, fn_from_json, fn_to_json, incidence_from_json, load_json, map_from_json,
    model_from_json, presburger_from_json, presburger_op_from_json, presburger_to_json,
    scene_from_json, set_from_json,
)
from src.models import FiniteModel, indicator, model_incidence, model_pullback, model_pushforward, sk0_class
from src.presburger import pres_class, pres_ops
from src.radon import (
    PolygonScene, double_radon_at, global_conditions, inversion_check_finite,
    inversion_check_plane, radon_finite,
)
from src.report_exporter import ReportExporter
from src.scenes import BUILTIN_SCENES, builtin_scene, split_samples
from src.selftest import all_passed, failures, render_summary, run_selftest

BUILTIN_HELP = "fano, pg2q=<q>, bipartite=<m>,<n>, " + ", ".join(BUILTIN_SCENES)


@dataclass
class Console:
    fmt: str
    stdout: TextIO
    stderr: TextIO

    def result(self, text: str, payload: Any):
        if self.fmt == "json":
            print(dumps(payload), file=self.stdout)
        else:
            print(text, file=self.stdout)

    def status(self, line: str):
        print(line, file=self.stderr)


# ── Inputs ───────────────────────────────────────────────────────────────────

def _positive_int(text: str, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise RejectedInput(f"{what} must be an integer, got {text!r}")
    if value < 1:
        raise RejectedInput(f"{what} must be >= 1, got {value}")
    return value


def resolve_builtin(spec: str) -> Tuple[str, Any]:
    """('incidence', FiniteIncidence) or ('scene', PolygonScene)."""
    name, _, arg = spec.partition("=")
    if name == "fano":
        return "incidence", fano()
    if name == "pg2q":
        return "incidence", pg2(_positive_int(arg, "q"))
    if name == "bipartite":
        m, _, n = arg.partition(",")
        return "incidence", complete_bipartite(_positive_int(m, "m"), _positive_int(n, "n"))
    if name in BUILTIN_SCENES:
        return "scene", PolygonScene(builtin_scene(name), name=name)
    raise RejectedInput(f"unknown builtin {spec!r}; choose from {BUILTIN_HELP}")


def _raw_input(args) -> Any:
    if not args.input:
        raise RejectedInput(f"no input: give a JSON file, inline JSON, or --builtin ({BUILTIN_HELP})")
    return load_json(args.input)


def _function(args) -> ConstructibleFn:
    """A constructible function from a function file, a scene file, or a built-in scene."""
    if args.builtin:
        kind, obj = resolve_builtin(args.builtin)
        if kind != "scene":
            raise RejectedInput(f"{args.builtin} is an incidence, not a function")
        return obj.weight_fn()
    raw = _raw_input(args)
    if isinstance(raw, dict) and "carrier" in raw:
        return fn_from_json(raw)
    return scene_from_json(raw).weight_fn()


def parse_point(text: str, f: ConstructibleFn):
    """--at value in the coordinates of f's carrier: label, x, (x, y) or a direction."""
    parts = [p.strip() for p in text.split(",")]
    if f.carrier is Carrier.FINITE:
        for label in f.pieces():
            if str(label) == text.strip():
                return label
        return text.strip()
    if f.carrier is Carrier.LINE:
        if len(parts) != 1:
            raise RejectedInput(f"--at on a line function takes one coordinate, got {text!r}")
        return rat(parts[0])
    if len(parts) != 2:
        raise RejectedInput(f"--at on a {f.carrier.value} function takes two coordinates, got {text!r}")
    if f.carrier is Carrier.PLANE:
        return point2(*parts)
    return direction(*parts)


def show(v: Any) -> str:
    """Exact, readable rendering of witnesses."""
    if isinstance(v, Fraction):
        return render_rat(v)
    if isinstance(v, tuple):
        return "(" + ", ".join(show(x) for x in v) + ")"
    if hasattr(v, "render"):
        return v.render()
    return str(v)


def _emit_fn(args, out: Console, f: ConstructibleFn):
    if args.at:
        v = cf_eval(f, parse_point(args.at, f))
        out.result(v.render(), {"at": args.at, "value": v.to_json()})
    else:
        out.result(render_fn(f), fn_to_json(f))


# ── Subcommands ──────────────────────────────────────────────────────────────

def cmd_mu(args, out: Console):
    if args.builtin:
        kind, obj = resolve_builtin(args.builtin)
        if kind != "scene":
            raise RejectedInput("mu needs a complex, a 1-D set or a built-in scene")
        value = mu_complex(obj.Z)
    else:
        raw = _raw_input(args)
        if isinstance(raw, dict) and "pieces" in raw:
            s = set_from_json(raw)
            value = mu_1d(s) if isinstance(s, LineSet1D) else mu_circle(s)
        else:
            value = mu_complex(scene_from_json(raw).Z)
    out.result(value.render(), {"mu": value.to_json()})


def cmd_integrate(args, out: Console):
    f = _function(args)
    if args.at:
        _emit_fn(args, out, f)
        return
    value = cf_integrate(f)
    out.result(value.render(), {"integral": value.to_json()})


def _map(args):
    if not args.map:
        raise RejectedInput("--map is required: a map JSON file or inline JSON")
    return map_from_json(load_json(args.map))


def cmd_push(args, out: Console):
    _emit_fn(args, out, cf_pushforward(_map(args), _function(args)))


def cmd_pull(args, out: Console):
    _emit_fn(args, out, cf_pullback(_map(args), _function(args)))


def _finite_report(inc: FiniteIncidence, name: str, args, out: Console, invert: bool):
    if not invert:
        rs = radon_finite(inc, indicator_finite(inc.X))
        cond = global_conditions(inc)
        lines = [f"R_S(1_X) = {render_fn(rs)}"]
        payload: Dict[str, Any] = {"transform": fn_to_json(rs), "hypotheses": cond.holds}
        if cond.holds:
            lines.append(f"λ={cond.z1.render()} θ={cond.z2.render()}")
            payload.update({"lambda": cond.z1.to_json(), "theta": cond.z2.to_json()})
        else:
            lines.append(f"hypotheses violated: {cond.message}")
        out.result("\n".join(lines), payload)
        return
    report = inversion_check_finite(inc, trials=args.trials, seed=args.seed, name=name)
    if report.hypotheses_ok:
        out.result(report.summary(), {
            "name": name, "ok": report.ok, "lambda": report.lam.to_json(),
            "theta": report.theta.to_json(), "trials": report.trials})
    report.raise_for_failure()


def _scene_samples(scene: PolygonScene, args) -> List:
    if scene.samples and not args.samples_given:
        return list(scene.samples)
    rng = np.random.default_rng(args.seed)
    half = math.ceil(args.samples / 2)
    inside, outside = split_samples(scene.Z, half, rng)
    return inside + outside[:args.samples - len(inside)]


def _scene_report(scene: PolygonScene, args, out: Console):
    points = _scene_samples(scene, args)
    if not args.invert:
        rows = [(p, double_radon_at(p, scene)) for p in points]
        out.result("\n".join(f"{show(p)}: R'R = {v.render()}" for p, v in rows),
                   {"name": scene.name,
                    "points": [{"point": [render_rat(p[0]), render_rat(p[1])], "value": v.to_json()}
                               for p, v in rows]})
        return
    report = inversion_check_plane(scene, points)
    lines = [f"{show(p)}: {lhs.render()} {'=' if lhs == rhs else '!='} {rhs.render()} "
             f"{'OK' if lhs == rhs else 'FAIL'}" for p, lhs, rhs in report.rows]
    lines.append(report.summary())
    out.result("\n".join(lines), {
        "name": scene.name, "ok": report.ok,
        "points": [{"point": [render_rat(p[0]), render_rat(p[1])], "lhs": lhs.to_json(),
                    "rhs": rhs.to_json()} for p, lhs, rhs in report.rows]})
    report.raise_for_failure()


def cmd_radon(args, out: Console):
    if args.builtin:
        kind, obj = resolve_builtin(args.builtin)
        name = args.builtin
    else:
        raw = _raw_input(args)
        if isinstance(raw, dict) and "X" in raw:
            kind, obj, name = "incidence", incidence_from_json(raw), "incidence"
        else:
            obj = scene_from_json(raw)
            kind, name = "scene", obj.name
    if kind == "incidence":
        _finite_report(obj, name, args, out, args.invert)
    else:
        _scene_report(obj, args, out)


def _model_fn(args, m: FiniteModel, default_subset: str) -> ConstructibleFn:
    if args.fn:
        return fn_from_json(load_json(args.fn))
    return indicator(m, default_subset)


def cmd_models(args, out: Console):
    m = model_from_json(_raw_input(args))
    if args.relation:
        names = [n.strip() for n in args.relation.split(",")]
        if len(names) != 3:
            raise RejectedInput(f"--relation takes S,X,Y, got {args.relation!r}")
        _finite_report(model_incidence(m, *names), names[0], args, out, invert=True)
        return
    if args.push:
        _emit_fn(args, out, model_pushforward(m, args.push, _model_fn(args, m, m.map(args.push).dom)))
        return
    if args.pull:
        _emit_fn(args, out, model_pullback(m, args.pull, _model_fn(args, m, m.map(args.pull).cod)))
        return
    classes = {name: sk0_class(m, name) for name in sorted(m.subsets)}
    pushed = {name: model_pushforward(m, name, indicator(m, m.maps[name].dom)) for name in sorted(m.maps)}
    lines = [f"[{name}] = {v.render()}" for name, v in classes.items()]
    lines += [f"{name}: {m.maps[name].dom} -> {m.maps[name].cod}, {name}_!(1) = {render_fn(f)}"
              for name, f in pushed.items()]
    out.result("\n".join(lines), {
        "classes": {name: v.to_json() for name, v in classes.items()},
        "pushforwards": {name: fn_to_json(f) for name, f in pushed.items()}})


def cmd_presburger(args, out: Console):
    raw = _raw_input(args)
    if isinstance(raw, dict) and "op" in raw:
        a, b, op = presburger_op_from_json(raw)
        result = pres_ops(a, b, op)
    else:
        result = presburger_from_json(raw)
    cls = pres_class(result)
    out.result(f"{result.render()}\nclass: {cls.render()}",
               {"set": presburger_to_json(result), "class": cls.to_json()})


def cmd_selftest(args, out: Console):
    summary = run_selftest(args.trials, args.seed, args.samples, args.inject_fault, log=out.status)
    records = [{k: (int(v) if k == "trials" else v) for k, v in row.items() if k != "seconds"}
               for row in summary.to_dict(orient="records")]
    out.result(render_summary(summary), {"ok": all_passed(summary), "suites": records})
    if args.export:
        settings = {"trials": args.trials, "seed": args.seed, "samples": args.samples,
                    "inject_fault": args.inject_fault}
        ReportExporter(log=out.status).export_all(summary, settings)
    if not all_passed(summary):
        first = failures(summary).iloc[0]
        raise IdentityFailure(f"[{first['module']}] {first['suite']}: {first['detail']}",
                              witness=first["suite"])


COMMANDS: Dict[str, Callable] = {
    "mu": cmd_mu,
    "integrate": cmd_integrate,
    "push": cmd_push,
    "pull": cmd_pull,
    "radon": cmd_radon,
    "models": cmd_models,
    "presburger": cmd_presburger,
    "selftest": cmd_selftest,
}


# ── Parser ───────────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format',  choices=OUTPUT_FORMATS, default=OUTPUT_FORMAT)
    common.add_argument('--seed',    type=int, default=DEFAULT_SEED)
    common.add_argument('--trials',  type=int, default=DEFAULT_TRIALS)
    common.add_argument('--samples', type=int, default=None,
                        help=f'sample points per scene (default {DEFAULT_SAMPLES})')
    common.add_argument('--builtin', default=None, help=BUILTIN_HELP)

    parser = argparse.ArgumentParser(prog='euler.py',
                                     description='Exact Euler/dimension integration toolkit')
    sub = parser.add_subparsers(dest='command', required=True)

    def add(name: str, help_text: str, with_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        if with_input:
            p.add_argument('input', nargs='?', help='JSON file or inline JSON')
        return p

    add('mu', 'measure (chi, dim) of a complex, 1-D set or scene')
    p = add('integrate', 'integral of a constructible function')
    p.add_argument('--at', default=None, help='evaluate the function at a point instead')
    for name, text in (('push', 'pushforward along a map'), ('pull', 'pullback along a map')):
        p = add(name, text)
        p.add_argument('--map', default=None, help='map JSON file or inline JSON')
        p.add_argument('--at',  default=None, help='evaluate the result at a point')
    p = add('radon', 'Radon transform and inversion checks')
    p.add_argument('--invert', action='store_true')
    p = add('models', 'classes, pushforward and pullback on a finite model')
    p.add_argument('--push',     default=None, metavar='MAP')
    p.add_argument('--pull',     default=None, metavar='MAP')
    p.add_argument('--fn',       default=None, help='finite function JSON (default: indicator)')
    p.add_argument('--at',       default=None)
    p.add_argument('--relation', default=None, metavar='S,X,Y',
                   help='check the inversion formula for a binary subset S of X x Y')
    add('presburger', 'canonical form and class of a Presburger set, or a Boolean operation')
    p = add('selftest', 'run every property suite', with_input=False)
    p.add_argument('--inject-fault', action='store_true',
                   help='also check the literal Z x N pairs as a semiring (must fail)')
    p.add_argument('--export', action='store_true', help='write reports to data/reports/')
    return parser


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None,
         stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    args.samples_given = args.samples is not None
    if args.samples is None:
        args.samples = DEFAULT_SAMPLES
    out = Console(args.format, stdout, stderr)
    try:
        if args.trials < 0 or args.samples < 0:
            raise RejectedInput("--trials and --samples must be >= 0")
        COMMANDS[args.command](args, out)
    except EulerCalcError as exc:
        out.status(f"❌ {exc}")
        witness = getattr(exc, "witness", None)
        if witness is not None:
            out.status(f"   witness: {show(witness)}")
        if isinstance(exc, IdentityFailure) and exc.lhs is not None:
            out.status(f"   lhs: {show(exc.lhs)}  rhs: {show(exc.rhs)}")
        return exc.exit_code
    return EXIT_OK
