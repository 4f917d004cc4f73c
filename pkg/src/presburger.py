"""
Presburger Sets
===============
Definable subsets of Z in one variable: finitely many points plus residue
progressions {x : x = r mod d, lo <= x <= hi} whose bounds may be infinite.

Internally a set is a table over one period L: for each residue s in [0, L)
the k-values with s + kL in the set, as merged integer intervals. Boolean
operations run on tables lifted to a common period. The canonical form is
read back off the table:

  * residues whose whole class is in the set become two-sided progressions at
    the smallest period that describes them;
  * the remaining eventually-upward residues become upward progressions,
    each starting right after its largest missing element;
  * symmetrically downward;
  * whatever is left is finite and becomes the point list.

The form depends only on the set, not on how it was written down, so
equality of canonical forms is set equality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.errors import RejectedInput
from src.semiring import EulerDim

Interval = Tuple[Optional[int], Optional[int]]   # closed, None = infinite
Table = Dict[int, List[Interval]]


@dataclass(frozen=True)
class Progression:
    r: int
    d: int
    lo: Optional[int] = None
    hi: Optional[int] = None

    def __post_init__(self):
        for name in ("r", "d", "lo", "hi"):
            v = getattr(self, name)
            if v is not None and (isinstance(v, bool) or not isinstance(v, int)):
                raise RejectedInput(f"progression {name} must be an integer, got {v!r}")
        if self.d < 1:
            raise RejectedInput(f"modulus must be >= 1, got {self.d}")
        object.__setattr__(self, "r", self.r % self.d)

    @property
    def infinite(self) -> bool:
        return self.lo is None or self.hi is None

    def contains(self, x: int) -> bool:
        return ((x - self.r) % self.d == 0
                and (self.lo is None or self.lo <= x)
                and (self.hi is None or x <= self.hi))

    def render(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        return f"{self.r} mod {self.d} [{lo}, {hi}]"


@dataclass(frozen=True)
class PresburgerSet:
    points: Tuple[int, ...] = ()
    progs: Tuple[Progression, ...] = ()

    def contains(self, x: int) -> bool:
        return x in self.points or any(p.contains(x) for p in self.progs)

    def window_mask(self, lo: int, hi: int) -> np.ndarray:
        """Membership of lo..hi as a boolean array."""
        xs = np.arange(lo, hi + 1, dtype=np.int64)
        mask = np.isin(xs, np.array(self.points, dtype=np.int64))
        for p in self.progs:
            hit = (xs - p.r) % p.d == 0
            if p.lo is not None:
                hit &= xs >= p.lo
            if p.hi is not None:
                hit &= xs <= p.hi
            mask |= hit
        return mask

    @property
    def is_finite(self) -> bool:
        return not any(p.infinite for p in self.progs)

    def render(self) -> str:
        parts = []
        if self.points:
            parts.append("{" + ", ".join(str(x) for x in self.points) + "}")
        parts.extend(p.render() for p in self.progs)
        return " ∪ ".join(parts) if parts else "∅"

    __str__ = render


# ── Integer interval lists ───────────────────────────────────────────────────

def _lo_key(iv: Interval) -> float:
    return -math.inf if iv[0] is None else iv[0]


def _iv_normalize(ivs: Iterable[Interval]) -> List[Interval]:
    out: List[Interval] = []
    for lo, hi in sorted(ivs, key=_lo_key):
        if lo is not None and hi is not None and lo > hi:
            continue
        if out and (out[-1][1] is None or lo is None or lo <= out[-1][1] + 1):
            prev_lo, prev_hi = out[-1]
            out[-1] = (prev_lo, None if prev_hi is None or hi is None else max(prev_hi, hi))
        else:
            out.append((lo, hi))
    return out


def _iv_complement(ivs: List[Interval]) -> List[Interval]:
    out: List[Interval] = []
    gap_lo: Optional[int] = None
    for lo, hi in ivs:
        if lo is not None:
            out.append((gap_lo, lo - 1))
        if hi is None:
            return out
        gap_lo = hi + 1
    out.append((gap_lo, None))
    return out


def _iv_union(a: List[Interval], b: List[Interval]) -> List[Interval]:
    return _iv_normalize(a + b)


def _iv_intersect(a: List[Interval], b: List[Interval]) -> List[Interval]:
    return _iv_complement(_iv_union(_iv_complement(a), _iv_complement(b)))


# ── Tables ───────────────────────────────────────────────────────────────────

def _period(a: PresburgerSet) -> int:
    return reduce(lambda x, y: x * y // math.gcd(x, y), (p.d for p in a.progs), 1)


def _table(a: PresburgerSet, L: int) -> Table:
    raw: Dict[int, List[Interval]] = {s: [] for s in range(L)}
    for x in a.points:
        s = x % L
        k = (x - s) // L
        raw[s].append((k, k))
    for p in a.progs:
        if L % p.d:
            raise RejectedInput(f"period {L} is not a multiple of modulus {p.d}")
        for s in range(p.r, L, p.d):
            lo = None if p.lo is None else -((s - p.lo) // L)
            hi = None if p.hi is None else (p.hi - s) // L
            raw[s].append((lo, hi))
    return {s: _iv_normalize(ivs) for s, ivs in raw.items()}


def _combine(a: PresburgerSet, b: PresburgerSet, op) -> PresburgerSet:
    L = _period(a) * _period(b) // math.gcd(_period(a), _period(b))
    ta, tb = _table(a, L), _table(b, L)
    return _from_table({s: op(ta[s], tb[s]) for s in range(L)}, L)


def _min_period(members: set, L: int) -> int:
    for p in range(1, L + 1):
        if L % p == 0 and all((s in members) == ((s + p) % L in members) for s in range(L)):
            return p
    return L


def _from_table(t: Table, L: int) -> PresburgerSet:
    full = {s for s in range(L) if t[s] == [(None, None)]}
    up = {s for s in range(L) if s not in full and t[s] and t[s][-1][1] is None}
    down = {s for s in range(L) if s not in full and t[s] and t[s][0][0] is None}

    progs: List[Progression] = []
    pf = _min_period(full, L)
    progs += [Progression(r, pf) for r in range(pf) if r in full]

    pu = _min_period(up, L)
    for r in range(pu):
        if r not in up:
            continue
        # largest missing element of the class, over every residue mod L in it
        missing = max(s + (t[s][-1][0] - 1) * L for s in range(r, L, pu))
        progs.append(Progression(r, pu, missing + pu, None))

    pd = _min_period(down, L)
    for r in range(pd):
        if r not in down:
            continue
        missing = min(s + (t[s][0][1] + 1) * L for s in range(r, L, pd))
        progs.append(Progression(r, pd, None, missing - pd))

    covered = _table(PresburgerSet((), tuple(progs)), L)
    points: List[int] = []
    for s in range(L):
        for lo, hi in _iv_intersect(t[s], _iv_complement(covered[s])):
            if lo is None or hi is None:
                raise AssertionError(f"unbounded remainder at residue {s} mod {L}")
            points.extend(s + k * L for k in range(lo, hi + 1))
    progs.sort(key=lambda p: (p.d, p.r, _lo_key((p.lo, p.hi)), p.hi is None))
    return PresburgerSet(tuple(sorted(points)), tuple(progs))


# ── Public operations ────────────────────────────────────────────────────────

Spec = Union[int, Progression, Tuple[int, int, Optional[int], Optional[int]]]


def pres_normalize(raw: Union[PresburgerSet, Iterable[Spec]]) -> PresburgerSet:
    """Canonical disjoint form of a union of points and progressions."""
    if isinstance(raw, PresburgerSet):
        a = raw
    else:
        points, progs = [], []
        for item in raw:
            if isinstance(item, Progression):
                progs.append(item)
            elif isinstance(item, int) and not isinstance(item, bool):
                points.append(item)
            elif isinstance(item, (tuple, list)) and len(item) == 4:
                progs.append(Progression(*item))
            else:
                raise RejectedInput(f"not a point or progression: {item!r}")
        a = PresburgerSet(tuple(points), tuple(progs))
    L = _period(a)
    return _from_table(_table(a, L), L)


PRES_OPS = ("union", "intersect", "difference")


def pres_ops(a: PresburgerSet, b: PresburgerSet, op: str) -> PresburgerSet:
    if op == "union":
        return _combine(a, b, _iv_union)
    if op == "intersect":
        return _combine(a, b, _iv_intersect)
    if op == "difference":
        return _combine(a, b, lambda x, y: _iv_intersect(x, _iv_complement(y)))
    raise RejectedInput(f"unknown Presburger operation {op!r}; expected one of {', '.join(PRES_OPS)}")


def pres_class(a: PresburgerSet) -> EulerDim:
    """(#X, 0) for finite X, (0, 1) for infinite X, zero for the empty set."""
    if any(p.infinite for p in a.progs):
        return EulerDim(0, 1)
    count = len(set(a.points) | {x for p in a.progs for x in range(p.lo, p.hi + 1) if p.contains(x)})
    return EulerDim.count(count)


def translate(a: PresburgerSet, c: int) -> PresburgerSet:
    moved = [Progression(p.r + c, p.d,
                         None if p.lo is None else p.lo + c,
                         None if p.hi is None else p.hi + c) for p in a.progs]
    return pres_normalize([x + c for x in a.points] + moved)


def reflect(a: PresburgerSet) -> PresburgerSet:
    flipped = [Progression(-p.r, p.d,
                           None if p.hi is None else -p.hi,
                           None if p.lo is None else -p.lo) for p in a.progs]
    return pres_normalize([-x for x in a.points] + flipped)


def from_points(points: Sequence[int]) -> PresburgerSet:
    return pres_normalize(list(points))
