"""
Radon Transform
===============
R_S = q_Y! ∘ q_X* for a correspondence S ⊂ X x Y, and the inversion formula

    R_S'(R_S(g)) = theta * g + lambda * ∫ g

checked three ways:

  finite   exact, over incidence structures (fiber classes by matrix product)
  plane    exact, pointwise: the double transform at p integrates the
           pencil of lines through p, parametrized by RP^1
  symbolic class-level coefficients for every n >= 2
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.axioms import sample_euler_dim
from src.config import CHECK_CONSTANCY, DEFAULT_SEED, DEFAULT_TRIALS
from src.constructible import (
    Carrier, ConstructibleFn, cf_eval, cf_integrate, cf_pullback, cf_pushforward,
    finite_fn, finite_map, indicator_complex, line_inclusion,
)
from src.errors import HypothesesViolated, IdentityFailure, RejectedInput, UnsupportedCombination
from src.geometry import (
    Line2D, OpenArc, PlaneComplex, Point2, circle_atoms, critical_directions_of, point2,
)
from src.incidence import FiniteIncidence, transpose
from src.semiring import EulerDim, a_add, a_mul

PENCIL_POINT_WEIGHT = EulerDim(-1, 1)   # ((-1)^(n+1), n-1) at n = 2


# ── Finite incidence structures ──────────────────────────────────────────────

def radon_finite(inc: FiniteIncidence, g: ConstructibleFn) -> ConstructibleFn:
    """Pull g back to S along q_X, push forward to Y along q_Y."""
    if g.carrier is not Carrier.FINITE:
        raise RejectedInput(f"finite Radon transform needs a finite function, got {g.carrier.value}")
    points = set(inc.X)
    outside = [x for x in g.pieces() if x not in points]
    if outside:
        raise RejectedInput(f"{outside[0]!r} is not a point of X")
    pairs = inc.pairs()
    q_x = finite_map({s: s[0] for s in pairs}, codomain=inc.X)
    q_y = finite_map({s: s[1] for s in pairs}, codomain=inc.Y)
    return cf_pushforward(q_y, cf_pullback(q_x, g))


def fiber_classes(inc: FiniteIncidence,
                  inc2: FiniteIncidence) -> Dict[Tuple[Hashable, Hashable], EulerDim]:
    """Class of r^-1(x, x') = {y : (x, y) in S, (y, x') in S'} for every pair."""
    if set(inc.Y) != set(inc2.X):
        raise RejectedInput("the second correspondence must start where the first one ends")
    yi = {y: n for n, y in enumerate(inc2.X)}
    order = [yi[y] for y in inc.Y]
    counts = inc.matrix() @ inc2.matrix()[order, :]
    return {(x, x2): EulerDim.count(int(counts[i, j]))
            for i, x in enumerate(inc.X) for j, x2 in enumerate(inc2.Y)}


def fit_lambda_theta(classes: Dict[Tuple[Hashable, Hashable], EulerDim],
                     X: Sequence[Hashable]) -> Tuple[EulerDim, EulerDim]:
    """lambda from the off-diagonal classes, theta from diagonal = theta + lambda."""
    off = [(pair, v) for pair, v in classes.items() if pair[0] != pair[1]]
    diag = [(pair, v) for pair, v in classes.items() if pair[0] == pair[1]]
    if len(diag) != len(X):
        raise RejectedInput("the second correspondence must end on X")
    for group, what in ((off, "off-diagonal"), (diag, "diagonal")):
        for pair, v in group[1:]:
            if v != group[0][1]:
                raise HypothesesViolated(
                    f"{what} fiber classes differ: {group[0][1].render()} at {group[0][0]} "
                    f"vs {v.render()} at {pair}", witness=(group[0][0], pair))
    lam = off[0][1] if off else EulerDim.zero()
    d = diag[0][1]
    count = d.euler - lam.euler
    if count <= 0:
        raise HypothesesViolated(
            f"θ = 0: diagonal class {d.render()} does not exceed λ = {lam.render()}",
            witness=diag[0][0])
    return lam, EulerDim.count(count)


def inversion_rhs(theta: EulerDim, lam: EulerDim, g_value: EulerDim,
                  g_integral: EulerDim) -> EulerDim:
    return a_add(a_mul(theta, g_value), a_mul(lam, g_integral))


def theta_alternatives(lam: EulerDim, diag: EulerDim) -> List[EulerDim]:
    """Every theta' with theta' + lambda = diag.

    Whenever dim g(x) <= dim ∫g (always the case for a genuine g), all of them
    give the same right-hand side of the inversion formula.
    """
    e = diag.euler - lam.euler
    if diag.is_zero:
        return [EulerDim.zero()] if lam.is_zero else []
    if lam.is_zero or lam.dim < diag.dim:
        return [EulerDim(e, diag.dim)]
    if lam.dim > diag.dim:
        return []
    out = [EulerDim(e, d) for d in range(diag.dim + 1)]
    return ([EulerDim.zero()] if e == 0 else []) + out


@dataclass
class InversionReport:
    name: str
    ok: bool
    hypotheses_ok: bool = True
    lam: Optional[EulerDim] = None
    theta: Optional[EulerDim] = None
    trials: int = 0
    message: str = ""
    witness: object = None
    lhs: Optional[EulerDim] = None
    rhs: Optional[EulerDim] = None

    def summary(self) -> str:
        if not self.hypotheses_ok:
            return f"{self.name}: hypotheses violated: {self.message}"
        head = f"{self.name}: λ={self.lam.render()} θ={self.theta.render()}"
        if self.ok:
            return f"{head} OK ({self.trials} trials)"
        return (f"{head} FAILED at {self.witness!r}: "
                f"{self.lhs.render()} != {self.rhs.render()}")

    def raise_for_failure(self):
        if not self.hypotheses_ok:
            raise HypothesesViolated(self.message, witness=self.witness)
        if not self.ok:
            raise IdentityFailure(self.summary(), witness=self.witness, lhs=self.lhs, rhs=self.rhs)


def random_finite_fn(labels: Sequence[Hashable], rng: np.random.Generator) -> ConstructibleFn:
    return finite_fn({x: sample_euler_dim(rng) for x in labels})


def inversion_check_finite(inc: FiniteIncidence, inc2: Optional[FiniteIncidence] = None,
                           gs: Optional[Iterable[ConstructibleFn]] = None,
                           trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
                           name: str = "finite inversion") -> InversionReport:
    """Fit (lambda, theta) and check the inversion formula on each g.

    inc2 defaults to the transpose of inc; without explicit gs, `trials` random
    A-valued functions on X are drawn from a seeded generator.
    """
    inc2 = transpose(inc) if inc2 is None else inc2
    try:
        lam, theta = fit_lambda_theta(fiber_classes(inc, inc2), inc.X)
    except HypothesesViolated as exc:
        return InversionReport(name, False, hypotheses_ok=False, message=str(exc), witness=exc.witness)
    if gs is None:
        rng = np.random.default_rng(seed)
        gs = [random_finite_fn(inc.X, rng) for _ in range(trials)]
    gs = list(gs)
    report = InversionReport(name, True, lam=lam, theta=theta, trials=len(gs))
    for g in gs:
        twice = radon_finite(inc2, radon_finite(inc, g))
        total = cf_integrate(g)
        for x in inc2.Y:
            lhs = cf_eval(twice, x)
            rhs = inversion_rhs(theta, lam, cf_eval(g, x), total)
            if lhs != rhs:
                report.ok, report.witness, report.lhs, report.rhs = False, x, lhs, rhs
                return report
    return report


@dataclass
class GlobalConditions:
    """Class functions of B1 over the off-diagonal X1 and of B2 over the diagonal."""
    b1: Dict[Tuple[Hashable, Hashable], EulerDim]
    b2: Dict[Hashable, EulerDim]
    z1: Optional[EulerDim] = None
    z2: Optional[EulerDim] = None
    holds: bool = False
    message: str = ""


def global_conditions(inc: FiniteIncidence,
                      inc2: Optional[FiniteIncidence] = None) -> GlobalConditions:
    inc2 = transpose(inc) if inc2 is None else inc2
    classes = fiber_classes(inc, inc2)
    out = GlobalConditions(
        b1={pair: v for pair, v in classes.items() if pair[0] != pair[1]},
        b2={pair[0]: v for pair, v in classes.items() if pair[0] == pair[1]},
    )
    try:
        out.z1, out.z2 = fit_lambda_theta(classes, inc.X)
        out.holds = True
    except HypothesesViolated as exc:
        out.message = str(exc)
    return out


# ── Planar scenes ────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PolygonScene:
    Z: PlaneComplex
    weights: Optional[ConstructibleFn] = None
    samples: Tuple[Point2, ...] = ()
    name: str = "scene"

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(point2(*p) for p in self.samples))
        w = self.weights
        if w is not None and (w.carrier is not Carrier.PLANE or w.plane_kind == "strips"):
            raise UnsupportedCombination("scene weights must be a compact planar function")

    def weight_fn(self) -> ConstructibleFn:
        return self.weights if self.weights is not None else indicator_complex(self.Z)


def sigma_Z(line: Line2D, scene: PolygonScene) -> EulerDim:
    """Integral of the scene weight over one line (the restriction is a pullback)."""
    return cf_integrate(cf_pullback(line_inclusion(line), scene.weight_fn()))


def pencil_profile(p, scene: PolygonScene,
                   check_constancy: Optional[bool] = None) -> ConstructibleFn:
    """sigma_Z of the line through p, as a function of its direction."""
    if check_constancy is None:
        check_constancy = CHECK_CONSTANCY
    p = point2(*p)
    g = scene.weight_fn()
    if g.is_zero:
        return ConstructibleFn(Carrier.CIRCLE)
    parts = []
    for atom in circle_atoms(critical_directions_of(p, g.pieces())):
        value = cf_integrate(cf_pullback(line_inclusion(Line2D(p, atom.sample())), g))
        if check_constancy and isinstance(atom, OpenArc):
            other = cf_integrate(cf_pullback(line_inclusion(Line2D(p, atom.second_sample())), g))
            if other != value:
                raise IdentityFailure(
                    f"pencil class is not constant on the arc {atom.start}->{atom.end}",
                    witness=(atom.sample(), atom.second_sample()), lhs=value, rhs=other)
        if not value.is_zero:
            parts.append((atom, value))
    return ConstructibleFn(Carrier.CIRCLE, tuple(parts))


def double_radon_at(p, scene: PolygonScene) -> EulerDim:
    return cf_integrate(pencil_profile(p, scene))


def plane_inversion_rhs(p, scene: PolygonScene) -> EulerDim:
    g = scene.weight_fn()
    return a_add(a_mul(PENCIL_POINT_WEIGHT, cf_eval(g, p)), a_mul(EulerDim.one(), cf_integrate(g)))


@dataclass
class PlaneInversionReport:
    name: str
    rows: List[Tuple[Point2, EulerDim, EulerDim]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(lhs == rhs for _, lhs, rhs in self.rows)

    @property
    def failures(self) -> List[Tuple[Point2, EulerDim, EulerDim]]:
        return [r for r in self.rows if r[1] != r[2]]

    def summary(self) -> str:
        good = len(self.rows) - len(self.failures)
        return f"{self.name}: {good}/{len(self.rows)} points OK"

    def raise_for_failure(self):
        if self.failures:
            p, lhs, rhs = self.failures[0]
            raise IdentityFailure(
                f"{self.name}: inversion fails at {p!r}: {lhs.render()} != {rhs.render()}",
                witness=p, lhs=lhs, rhs=rhs)


def inversion_check_plane(scene: PolygonScene,
                          samples: Optional[Iterable] = None) -> PlaneInversionReport:
    pts = scene.samples if samples is None else [point2(*p) for p in samples]
    report = PlaneInversionReport(scene.name)
    for p in pts:
        report.rows.append((p, double_radon_at(p, scene), plane_inversion_rhs(p, scene)))
    return report


# ── Class-level formulas ─────────────────────────────────────────────────────

def projective_class(n: int) -> EulerDim:
    """[P^n] = ((1 + (-1)^n) / 2, n)."""
    if n < 0:
        raise RejectedInput(f"projective dimension must be >= 0, got {n}")
    return EulerDim((1 + (-1) ** n) // 2, n)


def symbolic_inversion(n: int, g_value: EulerDim, g_integral: EulerDim) -> EulerDim:
    """((-1)^(n+1), n-1) g + ((1 + (-1)^n)/2, n-2) ∫g, the pencil formula in R^n."""
    if n < 2:
        raise RejectedInput(f"symbolic inversion needs n >= 2, got {n}")
    point_weight = EulerDim((-1) ** (n + 1), n - 1)
    return a_add(a_mul(point_weight, g_value), a_mul(projective_class(n - 2), g_integral))
