"""
Finite Incidence Structures
===========================
Correspondences S ⊂ X x Y between finite label sets, with numpy 0/1
incidence matrices, and the standard generators: the Fano plane, the
projective plane PG(2, q) over a prime field, and complete bipartite
relations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Hashable, Iterable, List, Tuple

import numpy as np

from src.errors import RejectedInput


@dataclass(frozen=True)
class FiniteIncidence:
    X: Tuple[Hashable, ...]
    Y: Tuple[Hashable, ...]
    S: FrozenSet[Tuple[Hashable, Hashable]]

    def __post_init__(self):
        X, Y = tuple(self.X), tuple(self.Y)
        for name, labels in (("X", X), ("Y", Y)):
            if len(set(labels)) != len(labels):
                raise RejectedInput(f"{name} lists a label twice")
        S = frozenset(tuple(pair) for pair in self.S)
        xs, ys = set(X), set(Y)
        for x, y in S:
            if x not in xs or y not in ys:
                raise RejectedInput(f"pair ({x!r}, {y!r}) is not in X x Y")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "S", S)

    def matrix(self) -> np.ndarray:
        """|X| x |Y| 0/1 incidence matrix in the order of X and Y."""
        xi = {x: n for n, x in enumerate(self.X)}
        yi = {y: n for n, y in enumerate(self.Y)}
        m = np.zeros((len(self.X), len(self.Y)), dtype=np.int64)
        for x, y in self.S:
            m[xi[x], yi[y]] = 1
        return m

    def pairs(self) -> List[Tuple[Hashable, Hashable]]:
        """S in the order of X, then Y."""
        xi = {x: n for n, x in enumerate(self.X)}
        yi = {y: n for n, y in enumerate(self.Y)}
        return sorted(self.S, key=lambda p: (xi[p[0]], yi[p[1]]))

    def through(self, x: Hashable) -> List[Hashable]:
        return [y for y in self.Y if (x, y) in self.S]


def incidence(X: Iterable[Hashable], Y: Iterable[Hashable],
              S: Iterable[Tuple[Hashable, Hashable]]) -> FiniteIncidence:
    return FiniteIncidence(tuple(X), tuple(Y), frozenset(tuple(p) for p in S))


def transpose(inc: FiniteIncidence) -> FiniteIncidence:
    return FiniteIncidence(inc.Y, inc.X, frozenset((y, x) for x, y in inc.S))


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q ** 0.5) + 1))


def _projective_points(q: int) -> List[Tuple[int, int, int]]:
    # first nonzero coordinate normalized to 1
    return [v for v in itertools.product(range(q), repeat=3)
            if any(v) and next(c for c in v if c) == 1]


def _label(prefix: str, v: Tuple[int, int, int]) -> str:
    return f"{prefix}({v[0]},{v[1]},{v[2]})"


def pg2(q: int) -> FiniteIncidence:
    """Points and lines of the projective plane over F_q, q prime.

    Lines are the same normalized vectors; a point lies on a line when their
    dot product vanishes mod q. There are q^2 + q + 1 of each.
    """
    if not _is_prime(q):
        raise RejectedInput(f"pg2 needs a prime order, got {q}")
    vs = _projective_points(q)
    P = np.array(vs, dtype=np.int64)
    on = (P @ P.T) % q == 0
    X = tuple(_label("P", v) for v in vs)
    Y = tuple(_label("L", v) for v in vs)
    S = frozenset((X[i], Y[j]) for i, j in zip(*np.nonzero(on)))
    return FiniteIncidence(X, Y, S)


def fano() -> FiniteIncidence:
    return pg2(2)


def complete_bipartite(m: int, n: int) -> FiniteIncidence:
    if m < 1 or n < 1:
        raise RejectedInput("complete bipartite incidence needs m, n >= 1")
    X = tuple(f"x{i}" for i in range(m))
    Y = tuple(f"y{j}" for j in range(n))
    return FiniteIncidence(X, Y, frozenset(itertools.product(X, Y)))
