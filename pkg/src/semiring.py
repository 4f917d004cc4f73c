"""
Semirings
=========
Value semirings for the Euler/dimension measure:

  A  = Z x (N u {bot})  pairs (Euler characteristic, dimension)
  E  = Z[x]/(x(x+1))    universal Euler characteristic of semilinear sets
  D  = antichains of monomials y^k z^l (k <= l) under the strict product order
  E x D                 componentwise product

dim(empty) is the bottom element BOTTOM (None): it is neutral for max and
absorbing for +, which makes (0, BOTTOM) an absorbing zero. With the literal
zero (0, 0) one gets (0,0)*(1,1) = (0,1) != (0,0), so 0x = 0 would fail.

All values are frozen dataclasses; every operation returns a new value.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Optional, Tuple

from src.errors import RejectedInput

BOTTOM: Optional[int] = None
BOTTOM_SYMBOL = "⊥"
_BOTTOM_SPELLINGS = ("⊥", "bot", "-inf")


def _dim_max(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _dim_sum(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None or b is None:
        return None
    return a + b


def _check_int(value, what: str) -> int:
    # bool is an int subclass; reject it so True never sneaks in as 1
    if isinstance(value, bool) or not isinstance(value, int):
        raise RejectedInput(f"{what} must be an integer, got {value!r}")
    return value


# ── Semiring A ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class EulerDim:
    """Element (euler, dim) of A; dim is None for the empty set."""
    euler: int
    dim: Optional[int]

    def __post_init__(self):
        _check_int(self.euler, "euler")
        if self.dim is None:
            if self.euler != 0:
                raise RejectedInput(
                    f"({self.euler}, {BOTTOM_SYMBOL}) is not in A: bottom dimension forces euler 0")
        elif _check_int(self.dim, "dim") < 0:
            raise RejectedInput(f"dimension must be a natural number, got {self.dim}")

    @classmethod
    def zero(cls) -> "EulerDim":
        return cls(0, BOTTOM)

    @classmethod
    def one(cls) -> "EulerDim":
        return cls(1, 0)

    @classmethod
    def count(cls, n: int) -> "EulerDim":
        """Class of a finite set with n points."""
        if n < 0:
            raise RejectedInput(f"cardinality must be >= 0, got {n}")
        return cls(n, 0) if n else cls.zero()

    @property
    def is_zero(self) -> bool:
        return self.dim is None

    def __add__(self, other: "EulerDim") -> "EulerDim":
        return a_add(self, other)

    def __mul__(self, other: "EulerDim") -> "EulerDim":
        return a_mul(self, other)

    def render(self) -> str:
        d = BOTTOM_SYMBOL if self.dim is None else str(self.dim)
        return f"({self.euler}, {d})"

    __str__ = render

    def to_json(self) -> list:
        return [self.euler, "bot" if self.dim is None else self.dim]

    @classmethod
    def from_json(cls, raw) -> "EulerDim":
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise RejectedInput(f"value must be [euler, dim|\"bot\"], got {raw!r}")
        e, d = raw
        if isinstance(d, str):
            if d.strip() not in _BOTTOM_SPELLINGS:
                raise RejectedInput(f"unknown dimension {d!r}")
            d = None
        return cls(_check_int(e, "euler"), d)

    @classmethod
    def parse(cls, text: str) -> "EulerDim":
        m = _EULER_DIM_RE.fullmatch(text.strip())
        if not m:
            raise RejectedInput(f"cannot parse {text!r} as (euler, dim)")
        d = m.group(2)
        return cls(int(m.group(1)), None if d in _BOTTOM_SPELLINGS else int(d))


_EULER_DIM_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(⊥|bot|-inf|\d+)\s*\)")


def a_add(x: EulerDim, y: EulerDim) -> EulerDim:
    return EulerDim(x.euler + y.euler, _dim_max(x.dim, y.dim))


def a_mul(x: EulerDim, y: EulerDim) -> EulerDim:
    d = _dim_sum(x.dim, y.dim)
    if d is None:
        return EulerDim.zero()
    return EulerDim(x.euler * y.euler, d)


def a_sum(values: Iterable[EulerDim]) -> EulerDim:
    return reduce(a_add, values, EulerDim.zero())


def euler_part(x: EulerDim) -> int:
    """The morphism A -> Z obtained by inverting additively: (a, b) -> a."""
    return x.euler


# ── Semiring E = Z[x]/(x(x+1)) ───────────────────────────────────────────────

@dataclass(frozen=True)
class EulerRingE:
    """c0 + c1*x with x^2 = -x."""
    c0: int
    c1: int

    def __post_init__(self):
        _check_int(self.c0, "c0")
        _check_int(self.c1, "c1")

    @classmethod
    def zero(cls) -> "EulerRingE":
        return cls(0, 0)

    @classmethod
    def one(cls) -> "EulerRingE":
        return cls(1, 0)

    def __add__(self, other: "EulerRingE") -> "EulerRingE":
        return e_add(self, other)

    def __mul__(self, other: "EulerRingE") -> "EulerRingE":
        return e_mul(self, other)

    def render(self) -> str:
        if self.c1 == 0:
            return str(self.c0)
        sign = "-" if self.c1 < 0 else "+"
        return f"{self.c0} {sign} {abs(self.c1)}x"

    __str__ = render


def e_add(x: EulerRingE, y: EulerRingE) -> EulerRingE:
    return EulerRingE(x.c0 + y.c0, x.c1 + y.c1)


def e_mul(x: EulerRingE, y: EulerRingE) -> EulerRingE:
    # (a + bx)(c + dx) = ac + (ad + bc)x + bd x^2 and x^2 = -x
    a, b, c, d = x.c0, x.c1, y.c0, y.c1
    return EulerRingE(a * c, a * d + b * c - b * d)


def e_eval_chi(x: EulerRingE) -> int:
    """Evaluate at x = -1: the o-minimal Euler characteristic."""
    return x.c0 - x.c1


# ── Semiring D of monomial antichains ────────────────────────────────────────

@dataclass(frozen=True, order=True)
class Monomial:
    """y^k z^l with k <= l."""
    k: int
    l: int

    def __post_init__(self):
        _check_int(self.k, "k")
        _check_int(self.l, "l")
        if self.k < 0 or self.l < 0:
            raise RejectedInput(f"exponents must be natural, got y^{self.k} z^{self.l}")
        if self.k > self.l:
            raise RejectedInput(f"invalid monomial y^{self.k} z^{self.l}: needs k <= l")

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.k + other.k, self.l + other.l)

    def render(self) -> str:
        return f"y^{self.k} z^{self.l}"

    __str__ = render


def d_prec(m: Monomial, m2: Monomial) -> bool:
    """Strict product order: both exponents strictly smaller."""
    return m.k < m2.k and m.l < m2.l


def _maximal(ms: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    unique = set(ms)
    keep = [m for m in unique if not any(d_prec(m, other) for other in unique)]
    return tuple(sorted(keep))


@dataclass(frozen=True)
class DimElement:
    """A prec-antichain of monomials, sorted by (k, l)."""
    monomials: Tuple[Monomial, ...] = ()

    def __post_init__(self):
        ms = tuple(self.monomials)
        for m in ms:
            if not isinstance(m, Monomial):
                raise RejectedInput(f"not a monomial: {m!r}")
        if ms != _maximal(ms):
            raise RejectedInput(
                "monomials must be a sorted antichain; build elements with d_normalize")
        object.__setattr__(self, "monomials", ms)

    @classmethod
    def zero(cls) -> "DimElement":
        return cls(())

    @classmethod
    def one(cls) -> "DimElement":
        return cls((Monomial(0, 0),))

    def __add__(self, other: "DimElement") -> "DimElement":
        return d_add(self, other)

    def __mul__(self, other: "DimElement") -> "DimElement":
        return d_mul(self, other)

    def render(self) -> str:
        if not self.monomials:
            return "0"
        return " + ".join(m.render() for m in self.monomials)

    __str__ = render

    @classmethod
    def parse(cls, text: str) -> "DimElement":
        text = text.strip()
        if text == "0":
            return cls.zero()
        ms = []
        for term in text.split("+"):
            m = _MONOMIAL_RE.fullmatch(term.strip())
            if not m:
                raise RejectedInput(f"cannot parse monomial {term.strip()!r}")
            ms.append(Monomial(int(m.group(1)), int(m.group(2))))
        return d_normalize(ms)


_MONOMIAL_RE = re.compile(r"y\^(\d+)\s*z\^(\d+)")


def d_normalize(ms: Iterable[Monomial]) -> DimElement:
    """Keep the prec-maximal monomials, deduplicated and sorted."""
    return DimElement(_maximal(ms))


def d_add(x: DimElement, y: DimElement) -> DimElement:
    return d_normalize(x.monomials + y.monomials)


def d_mul(x: DimElement, y: DimElement) -> DimElement:
    return d_normalize(a * b for a in x.monomials for b in y.monomials)


# ── E x D ────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ProductED:
    e: EulerRingE
    d: DimElement

    @classmethod
    def zero(cls) -> "ProductED":
        return cls(EulerRingE.zero(), DimElement.zero())

    @classmethod
    def one(cls) -> "ProductED":
        return cls(EulerRingE.one(), DimElement.one())

    def __add__(self, other: "ProductED") -> "ProductED":
        return ProductED(self.e + other.e, self.d + other.d)

    def __mul__(self, other: "ProductED") -> "ProductED":
        return ProductED(self.e * other.e, self.d * other.d)

    def render(self) -> str:
        return f"({self.e.render()}, {self.d.render()})"

    __str__ = render
