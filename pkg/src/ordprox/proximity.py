"""Proximities induced by an order relation.

Verdicts follow the 0/1 functional convention: ``NEAR`` is 0, ``FAR`` is 1.
A pair with no order relation in the queried direction gets ``UNDEFINED``.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import NotComparable, UnknownElement
from .order import CyclicOrder, PartialOrder, TotalOrder

__all__ = [
    "ProximityValue",
    "PropertyResult",
    "PropertyReport",
    "near",
    "near_partial",
    "near_total",
    "near_cyclic",
    "near_matrix",
    "check_properties",
    "chain_between",
]


class ProximityValue(enum.Enum):
    NEAR = 0
    FAR = 1
    UNDEFINED = None

    @property
    def numeric(self):
        return self.value

    def __str__(self):
        return self.name.lower()


NEAR = ProximityValue.NEAR
FAR = ProximityValue.FAR
UNDEFINED = ProximityValue.UNDEFINED


def near_partial(po: PartialOrder, a, b) -> ProximityValue:
    i, j = po._idx(a), po._idx(b)
    m = po.matrix
    if not m[i, j]:
        return UNDEFINED
    between = m[i] & m[:, j]
    between[i] = between[j] = False
    return FAR if between.any() else NEAR


def near_total(to: TotalOrder, a, b) -> ProximityValue:
    return near_partial(to, a, b)


def near_cyclic(cyc: CyclicOrder, a, b) -> ProximityValue:
    for x in (a, b):
        if x not in cyc:
            raise UnknownElement(x)
    if a != b and cyc.successor.get(a) == b:
        return NEAR
    return FAR


def near(order, a, b) -> ProximityValue:
    """Dispatch on the kind of ``order``."""
    if isinstance(order, CyclicOrder):
        return near_cyclic(order, a, b)
    return near_partial(order, a, b)


def near_matrix(order) -> np.ndarray:
    """Boolean matrix of NEAR verdicts, indexed like ``order.elements``."""
    el = order.elements
    return np.array([[near(order, a, b) is NEAR for b in el] for a in el], dtype=bool)


# -- property checks -----------------------------------------------------------

@dataclass(frozen=True)
class PropertyResult:
    name: str
    holds: bool
    counterexample: tuple | None = None

    def __post_init__(self):
        if self.holds != (self.counterexample is None):
            raise ValueError("counterexample must be present exactly when the property fails")


@dataclass(frozen=True)
class PropertyReport:
    kind: str
    results: tuple[PropertyResult, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.results)

    def __getitem__(self, name) -> PropertyResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self):
        return [r.name for r in self.results]

    def to_dict(self):
        return {
            "kind": self.kind,
            "ok": self.ok,
            "properties": [
                {
                    "name": r.name,
                    "holds": r.holds,
                    "counterexample": None if r.counterexample is None else list(r.counterexample),
                }
                for r in self.results
            ],
        }


def _result(name, witness):
    return PropertyResult(name, witness is None, witness)


def _first(iterable):
    return next(iter(iterable), None)


def _reachability(adj: np.ndarray) -> np.ndarray:
    """Reachability by paths of length >= 1 (Warshall)."""
    r = adj.copy()
    for k in range(len(r)):
        r |= np.outer(r[:, k], r[k])
    return r


def check_properties(order) -> PropertyReport:
    """Evaluate the proximity axioms for ``order`` by exhaustive quantification.

    Partial orders: reflexivity, antisymmetry, antitransitivity. Total
    orders add totality (a NEAR chain joins every pair in one direction).
    Cyclic orders: irreflexivity, antisymmetry, antitransitivity, totality
    and cyclicity, the last two read on the proximity graph.
    """
    el = order.elements
    n = len(el)
    v = {(a, b): near(order, a, b) for a in el for b in el}
    distinct3 = list(itertools.permutations(el, 3))
    results = []

    if order.kind == "cyclic":
        results.append(_result(
            "irreflexivity", _first((a,) for a in el if v[a, a] is not FAR)))
        results.append(_result(
            "antisymmetry",
            _first((a, b) for a in el for b in el
                   if v[a, b] is NEAR and v[b, a] is not FAR)))
    else:
        results.append(_result(
            "reflexivity", _first((a,) for a in el if v[a, a] is not NEAR)))
        results.append(_result(
            "antisymmetry",
            _first((a, b) for a in el for b in el
                   if a != b and v[a, b] is NEAR and v[b, a] is NEAR)))

    results.append(_result(
        "antitransitivity",
        _first((a, b, c) for a, b, c in distinct3
               if v[a, b] is NEAR and v[b, c] is NEAR and v[a, c] is not FAR)))

    if order.kind in ("total", "cyclic"):
        adj = np.array([[a != b and v[a, b] is NEAR for b in el] for a in el], dtype=bool)
        reach = _reachability(adj)
        results.append(_result(
            "totality",
            _first((el[i], el[j]) for i in range(n) for j in range(n)
                   if i != j and not (reach[i, j] or reach[j, i]))))
        if order.kind == "cyclic":
            idx = order.index
            results.append(_result(
                "cyclicity",
                _first((a, b, c) for a, b, c in distinct3
                       if reach[idx[a], idx[b]] and reach[idx[b], idx[c]]
                       and not (reach[idx[c], idx[a]]))))
    return PropertyReport(order.kind, tuple(results))


def chain_between(to: TotalOrder, a, b) -> list:
    """The NEAR chain from ``a`` up to ``b`` in a total order."""
    if not to.leq(a, b):
        raise NotComparable(a, b)
    chain = [a]
    while chain[-1] != b:
        cur = chain[-1]
        step = next(
            x for x in to.elements
            if x != cur and to.leq(x, b) and near_total(to, cur, x) is NEAR
        )
        chain.append(step)
    return chain
