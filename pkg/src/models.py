"""
Finite Models
=============
Direct images over a finite first-order model: named subsets of the
universe (or of its powers), named total maps between them, their counting
classes [X] = (#X, 0), and pushforward/pullback of A-valued functions along
the maps.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Sequence, Tuple

from src.constructible import (
    Carrier, ConstructibleFn, DefinableMapDesc, cf_integrate, cf_pullback, cf_pushforward,
    finite_fn, finite_map, label_key,
)
from src.errors import RejectedInput
from src.incidence import FiniteIncidence
from src.semiring import EulerDim

UNIVERSE = "universe"


def freeze(element):
    """JSON lists become tuples so tuple elements of universe^k are hashable."""
    if isinstance(element, list):
        return tuple(freeze(e) for e in element)
    return element


@dataclass(frozen=True)
class ModelMap:
    dom: str
    cod: str
    table: Tuple[Tuple[Hashable, Hashable], ...]

    @property
    def mapping(self) -> Dict[Hashable, Hashable]:
        return dict(self.table)


@dataclass
class FiniteModel:
    universe: Tuple[Hashable, ...]
    subsets: Dict[str, FrozenSet[Hashable]] = field(default_factory=dict)
    maps: Dict[str, ModelMap] = field(default_factory=dict)

    def __post_init__(self):
        self.universe = tuple(freeze(u) for u in self.universe)
        if len(set(self.universe)) < 2:
            raise RejectedInput("a model needs at least two distinct elements")
        if len(set(self.universe)) != len(self.universe):
            raise RejectedInput("universe lists an element twice")
        self.subsets = {name: frozenset(freeze(e) for e in members)
                        for name, members in self.subsets.items()}
        self.subsets.setdefault(UNIVERSE, frozenset(self.universe))
        elements = set(self.universe)
        for name, members in self.subsets.items():
            for e in members:
                atoms = e if isinstance(e, tuple) else (e,)
                if any(a not in elements for a in atoms):
                    raise RejectedInput(f"subset {name!r}: {e!r} is not built from the universe")
        for name, m in list(self.maps.items()):
            self.maps[name] = self._check_map(name, m)

    def _check_map(self, name: str, m: ModelMap) -> ModelMap:
        dom, cod = self.subset(m.dom), self.subset(m.cod)
        table = tuple((freeze(x), freeze(y)) for x, y in m.table)
        keys = [x for x, _ in table]
        if set(keys) != dom or len(keys) != len(dom):
            raise RejectedInput(f"map {name!r} is not total on {m.dom!r}")
        bad = [y for _, y in table if y not in cod]
        if bad:
            raise RejectedInput(f"map {name!r} sends into {bad[0]!r}, outside {m.cod!r}")
        return ModelMap(m.dom, m.cod, table)

    def subset(self, name: str) -> FrozenSet[Hashable]:
        if name not in self.subsets:
            raise RejectedInput(f"unknown subset {name!r}")
        return self.subsets[name]

    def map(self, name: str) -> ModelMap:
        if name not in self.maps:
            raise RejectedInput(f"unknown map {name!r}")
        return self.maps[name]

    def sorted_subset(self, name: str) -> List[Hashable]:
        return sorted(self.subset(name), key=label_key)

    def map_desc(self, name: str) -> DefinableMapDesc:
        m = self.map(name)
        return finite_map(m.mapping, codomain=self.sorted_subset(m.cod))

    def with_map(self, name: str, m: ModelMap) -> "FiniteModel":
        maps = dict(self.maps)
        maps[name] = m
        return FiniteModel(self.universe, dict(self.subsets), maps)


def sk0_class(m: FiniteModel, name: str) -> EulerDim:
    return EulerDim.count(len(m.subset(name)))


def _on(m: FiniteModel, subset: str, g: ConstructibleFn, what: str):
    if g.carrier is not Carrier.FINITE:
        raise RejectedInput(f"carrier mismatch: {what} needs a finite function, got {g.carrier.value}")
    members = m.subset(subset)
    outside = [x for x in g.pieces() if x not in members]
    if outside:
        raise RejectedInput(f"carrier mismatch: {outside[0]!r} is not in {subset!r}")


def model_pushforward(m: FiniteModel, map_name: str, g: ConstructibleFn) -> ConstructibleFn:
    _on(m, m.map(map_name).dom, g, "pushforward")
    return cf_pushforward(m.map_desc(map_name), g)


def model_pullback(m: FiniteModel, map_name: str, h: ConstructibleFn) -> ConstructibleFn:
    _on(m, m.map(map_name).cod, h, "pullback")
    return cf_pullback(m.map_desc(map_name), h)


def model_integrate(m: FiniteModel, name: str, g: ConstructibleFn) -> EulerDim:
    """Integral of g over one named subset."""
    members = m.subset(name)
    return cf_integrate(finite_fn({x: v for x, v in g.parts if x in members}))


def indicator(m: FiniteModel, name: str, value: EulerDim = EulerDim.one()) -> ConstructibleFn:
    return finite_fn({x: value for x in m.subset(name)})


def compose_maps(m: FiniteModel, first: str, second: str) -> ModelMap:
    """second after first; the codomain of first must be the domain of second."""
    f, h = m.map(first), m.map(second)
    if f.cod != h.dom:
        raise RejectedInput(f"cannot compose: {first!r} lands in {f.cod!r}, {second!r} starts at {h.dom!r}")
    outer = h.mapping
    return ModelMap(f.dom, h.cod, tuple((x, outer[y]) for x, y in f.table))


def product_model(X: Sequence[Hashable], Y: Sequence[Hashable]) -> FiniteModel:
    """X, Y and X x Y inside one universe, with the projections pr1 and pr2."""
    pairs = list(itertools.product(X, Y))
    universe = list(dict.fromkeys(list(X) + list(Y)))
    return FiniteModel(
        tuple(universe),
        {"X": frozenset(X), "Y": frozenset(Y), "XxY": frozenset(pairs)},
        {"pr1": ModelMap("XxY", "X", tuple((p, p[0]) for p in pairs)),
         "pr2": ModelMap("XxY", "Y", tuple((p, p[1]) for p in pairs))},
    )


def model_incidence(m: FiniteModel, relation: str, X: str, Y: str) -> FiniteIncidence:
    """A named binary subset S ⊂ X x Y as an incidence structure."""
    xs, ys = m.sorted_subset(X), m.sorted_subset(Y)
    S = m.subset(relation)
    for pair in S:
        if not (isinstance(pair, tuple) and len(pair) == 2):
            raise RejectedInput(f"{relation!r} is not a binary relation: {pair!r}")
    return FiniteIncidence(tuple(xs), tuple(ys), frozenset(S))


def all_maps(X: Sequence[Hashable], Y: Sequence[Hashable]) -> Iterable[Dict[Hashable, Hashable]]:
    """Every map X -> Y, for exhaustive sweeps."""
    for images in itertools.product(Y, repeat=len(X)):
        yield dict(zip(X, images))


def all_functions(X: Sequence[Hashable], values: Sequence[EulerDim]) -> Iterable[ConstructibleFn]:
    for vs in itertools.product(values, repeat=len(X)):
        yield finite_fn(dict(zip(X, vs)))
