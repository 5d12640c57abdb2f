"""Directed graphs built from orders, and the Hasse/proximity comparison."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter

import numpy as np

from .errors import UnknownElement, UnknownFormat, UnsupportedGraph, ValidationError
from .order import CyclicOrder
from .proximity import NEAR, near

__all__ = [
    "DirectedGraph",
    "EquivalenceReport",
    "order_graph",
    "transitive_reduction",
    "hasse",
    "proximity_graph",
    "check_equivalence",
    "export",
]


class DirectedGraph:
    """Vertices in a fixed order plus edges ``(src, dst) -> weight or None``."""

    def __init__(self, vertices, edges=()):
        self.vertices = tuple(vertices)
        self._vset = set(self.vertices)
        if len(self._vset) != len(self.vertices):
            raise ValidationError("duplicate vertex")
        self._edges = {}
        for e in edges:
            src, dst = e[0], e[1]
            weight = e[2] if len(e) > 2 else None
            for x in (src, dst):
                if x not in self._vset:
                    raise UnknownElement(x)
            if (src, dst) in self._edges:
                raise ValidationError(f"duplicate edge {src!r} -> {dst!r}")
            self._edges[src, dst] = None if weight is None else float(weight)

    def __repr__(self):
        return f"DirectedGraph({len(self.vertices)} vertices, {len(self._edges)} edges)"

    def __eq__(self, other):
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self._vset == other._vset and self._edges == other._edges

    __hash__ = None

    @property
    def edges(self) -> list[tuple]:
        return [(s, d, w) for (s, d), w in self._edges.items()]

    def edge_set(self) -> set[tuple]:
        return set(self._edges)

    def weight(self, src, dst):
        return self._edges[src, dst]

    def has_edge(self, src, dst) -> bool:
        return (src, dst) in self._edges

    def successors(self, v) -> list:
        return [d for (s, d) in self._edges if s == v]

    def in_degree(self, v) -> int:
        return sum(1 for (_, d) in self._edges if d == v)

    def out_degree(self, v) -> int:
        return sum(1 for (s, _) in self._edges if s == v)

    def adjacency(self) -> np.ndarray:
        idx = {v: i for i, v in enumerate(self.vertices)}
        a = np.zeros((len(self.vertices),) * 2, dtype=bool)
        for s, d in self._edges:
            a[idx[s], idx[d]] = True
        return a

    def is_simple_path(self) -> bool:
        n = len(self.vertices)
        if len(self._edges) != max(n - 1, 0):
            return False
        if any(self.in_degree(v) > 1 or self.out_degree(v) > 1 for v in self.vertices):
            return False
        return n <= 1 or len(self.vertices) == len(_walk_path(self))

    def is_simple_cycle(self) -> bool:
        n = len(self.vertices)
        if n < 2 or len(self._edges) != n:
            return False
        if any(self.in_degree(v) != 1 or self.out_degree(v) != 1 for v in self.vertices):
            return False
        succ = {s: d for s, d in self._edges}
        seen, cur = set(), self.vertices[0]
        while cur not in seen:
            seen.add(cur)
            cur = succ[cur]
        return len(seen) == n


def _walk_path(g: DirectedGraph) -> list:
    starts = [v for v in g.vertices if g.in_degree(v) == 0]
    if len(starts) != 1:
        return []
    succ = {s: d for s, d in g.edge_set()}
    out, cur = [], starts[0]
    while cur is not None and cur not in out:
        out.append(cur)
        cur = succ.get(cur)
    return out


# -- constructions -------------------------------------------------------------

def order_graph(order) -> DirectedGraph:
    """Edge ``a -> b`` for every strict relation.

    For cyclic orders each triple ``[a, b, c]`` contributes ``a -> b`` and
    ``b -> c``; self-loops are never emitted.
    """
    el = order.elements
    if isinstance(order, CyclicOrder):
        edges = set()
        for a, b, c in order.triples():
            edges.add((a, b))
            edges.add((b, c))
        return DirectedGraph(el, sorted(edges, key=lambda e: (order.index[e[0]], order.index[e[1]])))
    m = order.matrix
    return DirectedGraph(
        el, [(el[i], el[j]) for i, j in zip(*np.nonzero(m)) if i != j]
    )


def _is_cyclic_order_graph(g: DirectedGraph):
    """Return the successor cycle if ``g`` is the order graph of a cyclic order."""
    n = len(g.vertices)
    if n < 3:
        return None
    pred = {}
    for v in g.vertices:
        missing = [w for w in g.vertices if w != v and not g.has_edge(v, w)]
        if len(missing) != 1 or g.has_edge(v, v):
            return None
        pred[v] = missing[0]
    succ = {p: v for v, p in pred.items()}
    if len(succ) != n:
        return None
    cyc = CyclicOrder(g.vertices, succ)
    if not cyc.is_single_cycle():
        return None
    if order_graph(cyc).edge_set() != g.edge_set():
        return None
    return cyc


def transitive_reduction(g: DirectedGraph) -> DirectedGraph:
    """Minimal edge subset with the same reachability.

    Supports DAGs and order graphs of cyclic orders (whose reduction is the
    successor cycle). A graph that is already a simple directed cycle is
    returned unchanged.
    """
    edges = g.edge_set()
    if any(s == d for s, d in edges):
        raise UnsupportedGraph("self-loops are not supported")
    preds = {v: [] for v in g.vertices}
    for s, d in edges:
        preds[d].append(s)
    try:
        topo = list(TopologicalSorter(preds).static_order())
    except CycleError:
        if g.is_simple_cycle():
            return DirectedGraph(g.vertices, g.edges)
        cyc = _is_cyclic_order_graph(g)
        if cyc is None:
            raise UnsupportedGraph(
                "cyclic input is not the order graph of a cyclic order"
            ) from None
        return DirectedGraph(
            g.vertices,
            [(a, cyc.successor[a], g.weight(a, cyc.successor[a])) for a in g.vertices],
        )

    # descendants as bitmasks, children before parents
    bit = {v: 1 << i for i, v in enumerate(g.vertices)}
    succ = {v: [] for v in g.vertices}
    for s, d in edges:
        succ[s].append(d)
    desc = {}
    for v in reversed(topo):
        mask = 0
        for w in succ[v]:
            mask |= bit[w] | desc[w]
        desc[v] = mask
    kept = []
    for s, d, w in g.edges:
        # alternate path s -> x ~> d through another successor x
        if any(x != d and desc[x] & bit[d] for x in succ[s]):
            continue
        kept.append((s, d, w))
    return DirectedGraph(g.vertices, kept)


def hasse(order) -> DirectedGraph:
    return transitive_reduction(order_graph(order))


def proximity_graph(order) -> DirectedGraph:
    """Edge ``a -> b`` whenever the induced proximity says NEAR and ``a != b``."""
    el = order.elements
    return DirectedGraph(
        el, [(a, b) for a in el for b in el if a != b and near(order, a, b) is NEAR]
    )


@dataclass(frozen=True)
class EquivalenceReport:
    equal: bool
    only_in_proximity: tuple
    only_in_hasse: tuple

    def __bool__(self):
        return self.equal

    def to_dict(self):
        return {
            "equal": self.equal,
            "only_in_proximity": [list(e) for e in self.only_in_proximity],
            "only_in_hasse": [list(e) for e in self.only_in_hasse],
        }


def check_equivalence(order, *, prox: DirectedGraph | None = None) -> EquivalenceReport:
    """Compare the proximity graph of ``order`` with its Hasse diagram.

    ``prox`` substitutes a precomputed proximity graph; tests use it to
    inject corrupted edges.
    """
    p = proximity_graph(order) if prox is None else prox
    h = hasse(order)
    pe, he = p.edge_set(), h.edge_set()
    same_vertices = set(p.vertices) == set(h.vertices)
    key = lambda e: (str(e[0]), str(e[1]))  # noqa: E731
    return EquivalenceReport(
        same_vertices and pe == he,
        tuple(sorted(pe - he, key=key)),
        tuple(sorted(he - pe, key=key)),
    )


# -- export --------------------------------------------------------------------

_BARE_ID = re.compile(r"^(?:[A-Za-z_][A-Za-z0-9_]*|-?(?:\.[0-9]+|[0-9]+(?:\.[0-9]*)?))$")


def _dot_id(v) -> str:
    s = str(v)
    if _BARE_ID.match(s):
        return s
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_weight(w: float) -> str:
    return f"{w:#.6g}"


def export(g: DirectedGraph, fmt: str = "dot", name: str = "G") -> str:
    """Serialise ``g`` deterministically; vertices and edges sorted by label."""
    verts = sorted(g.vertices, key=str)
    edges = sorted(g.edges, key=lambda e: (str(e[0]), str(e[1])))
    if fmt == "json":
        return json.dumps(
            {"vertices": verts, "edges": [[s, d, w] for s, d, w in edges]},
            separators=(",", ":"),
        )
    if fmt == "dot":
        lines = [f"digraph {_dot_id(name)} {{"]
        lines += [f"  {_dot_id(v)};" for v in verts]
        for s, d, w in edges:
            attr = "" if w is None else f' [label="{format_weight(w)}"]'
            lines.append(f"  {_dot_id(s)} -> {_dot_id(d)}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise UnknownFormat(f"unknown graph format {fmt!r}; expected 'dot' or 'json'")
