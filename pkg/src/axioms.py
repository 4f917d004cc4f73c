"""
Semiring axiom kit
==================
Randomized, seeded checks of the semiring laws

    (x+y)+z = x+(y+z)   x+y = y+x   0+x = x
    (xy)z = x(yz)       xy = yx     1x = x
    x(y+z) = xy+xz      (x+y)z = xz+yz
    0x = 0 = x0

and of semiring morphisms. A failing law is reported with the first witness
triple; the generator is numpy's default_rng seeded from the caller, so a
report can always be reproduced.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Tuple

import numpy as np

from src.errors import IdentityFailure
from src.semiring import (
    DimElement, EulerDim, EulerRingE, Monomial, ProductED, d_normalize,
)

Sampler = Callable[[np.random.Generator], Any]


@dataclass(frozen=True)
class SemiringSpec:
    """The operations of one semiring instance, as plain callables."""
    name: str
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    eq: Callable[[Any, Any], bool] = lambda a, b: a == b


@dataclass
class AxiomReport:
    name: str
    trials: int
    ok: bool = True
    law: Optional[str] = None
    witness: Optional[Tuple[Any, ...]] = None
    lhs: Any = None
    rhs: Any = None
    laws_checked: List[str] = field(default_factory=list)

    def summary(self) -> str:
        if self.ok:
            return f"{self.name}: {len(self.laws_checked)} laws hold on {self.trials} trials"
        w = ", ".join(_show(v) for v in self.witness or ())
        return (f"{self.name}: law '{self.law}' fails at ({w}): "
                f"{_show(self.lhs)} != {_show(self.rhs)}")

    def raise_for_failure(self):
        if not self.ok:
            raise IdentityFailure(self.summary(), witness=self.witness,
                                  lhs=self.lhs, rhs=self.rhs)


def _show(v: Any) -> str:
    return v.render() if hasattr(v, "render") else repr(v)


def _laws(S: SemiringSpec, x, y, z):
    add, mul, zero, one = S.add, S.mul, S.zero, S.one
    yield "add_assoc", add(add(x, y), z), add(x, add(y, z))
    yield "add_comm", add(x, y), add(y, x)
    yield "add_unit", add(zero, x), x
    yield "mul_assoc", mul(mul(x, y), z), mul(x, mul(y, z))
    yield "mul_comm", mul(x, y), mul(y, x)
    yield "mul_unit", mul(one, x), x
    yield "left_distrib", mul(x, add(y, z)), add(mul(x, y), mul(x, z))
    yield "right_distrib", mul(add(x, y), z), add(mul(x, z), mul(y, z))
    yield "zero_absorbs", mul(zero, x), zero
    yield "zero_absorbs_right", mul(x, zero), zero


LAW_NAMES = ("add_assoc", "add_comm", "add_unit", "mul_assoc", "mul_comm", "mul_unit",
             "left_distrib", "right_distrib", "zero_absorbs", "zero_absorbs_right")


def axiom_suite(S: SemiringSpec, sampler: Sampler, trials: int,
                seed: int = 0) -> AxiomReport:
    """Check every semiring law on `trials` random triples."""
    rng = np.random.default_rng(seed)
    report = AxiomReport(name=S.name, trials=trials, laws_checked=list(LAW_NAMES))
    for _ in range(trials):
        x, y, z = sampler(rng), sampler(rng), sampler(rng)
        for law, lhs, rhs in _laws(S, x, y, z):
            if not S.eq(lhs, rhs):
                report.ok = False
                report.law, report.witness = law, (x, y, z)
                report.lhs, report.rhs = lhs, rhs
                return report
    return report


def homomorphism_suite(name: str, source: SemiringSpec, target: SemiringSpec,
                       phi: Callable[[Any], Any], sampler: Sampler,
                       trials: int, seed: int = 0) -> AxiomReport:
    """Check phi(x+y) = phi(x)+phi(y), phi(xy) = phi(x)phi(y) and the units."""
    rng = np.random.default_rng(seed)
    report = AxiomReport(name=name, trials=trials,
                         laws_checked=["maps_zero", "maps_one", "preserves_add", "preserves_mul"])
    checks = [("maps_zero", phi(source.zero), target.zero),
              ("maps_one", phi(source.one), target.one)]
    for law, lhs, rhs in checks:
        if not target.eq(lhs, rhs):
            report.ok, report.law, report.witness = False, law, ()
            report.lhs, report.rhs = lhs, rhs
            return report
    for _ in range(trials):
        x, y = sampler(rng), sampler(rng)
        for law, lhs, rhs in (
            ("preserves_add", phi(source.add(x, y)), target.add(phi(x), phi(y))),
            ("preserves_mul", phi(source.mul(x, y)), target.mul(phi(x), phi(y))),
        ):
            if not target.eq(lhs, rhs):
                report.ok, report.law, report.witness = False, law, (x, y)
                report.lhs, report.rhs = lhs, rhs
                return report
    return report


# ── Semiring instances ───────────────────────────────────────────────────────

SEMIRING_A = SemiringSpec("A", EulerDim.zero(), EulerDim.one(),
                          lambda a, b: a + b, lambda a, b: a * b)
SEMIRING_E = SemiringSpec("E", EulerRingE.zero(), EulerRingE.one(),
                          lambda a, b: a + b, lambda a, b: a * b)
SEMIRING_D = SemiringSpec("D", DimElement.zero(), DimElement.one(),
                          lambda a, b: a + b, lambda a, b: a * b)
SEMIRING_ED = SemiringSpec("E x D", ProductED.zero(), ProductED.one(),
                           lambda a, b: a + b, lambda a, b: a * b)
SEMIRING_INT = SemiringSpec("Z (counting)", 0, 1,
                            lambda a, b: a + b, lambda a, b: a * b)

# Z x N with (0, 0) as additive unit and no bottom: 0x = 0 fails here
SEMIRING_LITERAL_PAIRS = SemiringSpec(
    "Z x N with zero (0,0)", (0, 0), (1, 0),
    lambda a, b: (a[0] + b[0], max(a[1], b[1])),
    lambda a, b: (a[0] * b[0], a[1] + b[1]),
)


def _int(rng: np.random.Generator, lo: int, hi: int) -> int:
    return int(rng.integers(lo, hi + 1))


def sample_euler_dim(rng: np.random.Generator) -> EulerDim:
    if rng.random() < 0.15:
        return EulerDim.zero()
    return EulerDim(_int(rng, -6, 6), _int(rng, 0, 4))


def sample_ring_e(rng: np.random.Generator) -> EulerRingE:
    return EulerRingE(_int(rng, -9, 9), _int(rng, -9, 9))


def sample_monomial(rng: np.random.Generator) -> Monomial:
    k = _int(rng, 0, 4)
    return Monomial(k, k + _int(rng, 0, 4))


def sample_dim_element(rng: np.random.Generator) -> DimElement:
    return d_normalize(sample_monomial(rng) for _ in range(_int(rng, 0, 4)))


def sample_product_ed(rng: np.random.Generator) -> ProductED:
    return ProductED(sample_ring_e(rng), sample_dim_element(rng))


def sample_int(rng: np.random.Generator) -> int:
    return _int(rng, -20, 20)


def sample_literal_pair(rng: np.random.Generator) -> Tuple[int, int]:
    return (_int(rng, -6, 6), _int(rng, 0, 4))


STANDARD_SUITES = (
    (SEMIRING_A, sample_euler_dim),
    (SEMIRING_E, sample_ring_e),
    (SEMIRING_D, sample_dim_element),
    (SEMIRING_ED, sample_product_ed),
    (SEMIRING_INT, sample_int),
)
