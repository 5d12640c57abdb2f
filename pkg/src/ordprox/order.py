"""Finite order relations, linear or cyclic.

The order classes' constructors only check that ids are well formed, not
the order axioms, so tests can build broken relations on purpose. Use the
``validate_*`` functions for anything coming from outside.
"""
from __future__ import annotations

import itertools
import json
from collections.abc import Hashable, Iterable, Mapping

import numpy as np

from .errors import (
    AmbiguousTriples,
    AntisymmetryViolation,
    DegenerateTriple,
    DuplicateElement,
    IncomparablePair,
    InconsistentTriples,
    MissingReflexivePair,
    TooFewElements,
    TransitivityViolation,
    UnknownElement,
    ValidationError,
)

__all__ = [
    "PartialOrder",
    "TotalOrder",
    "CyclicOrder",
    "validate_partial_order",
    "validate_total_order",
    "validate_cyclic_order",
    "cyclic_from_total",
    "triple_holds",
    "order_from_json",
    "load_order",
]


def _index_elements(elements: Iterable[Hashable]) -> tuple[tuple, dict]:
    elements = tuple(elements)
    index = {}
    for i, e in enumerate(elements):
        if isinstance(e, str) and not e:
            raise ValidationError("element ids must be nonempty")
        if e in index:
            raise DuplicateElement(e)
        index[e] = i
    return elements, index


class PartialOrder:
    """A finite set with a binary relation ``a <= b`` stored as a boolean matrix."""

    kind = "partial"

    def __init__(self, elements, pairs):
        self.elements, self.index = _index_elements(elements)
        n = len(self.elements)
        leq = np.zeros((n, n), dtype=bool)
        for a, b in pairs:
            leq[self._idx(a), self._idx(b)] = True
        leq.setflags(write=False)
        self.matrix = leq

    def _idx(self, a) -> int:
        try:
            return self.index[a]
        except (KeyError, TypeError):
            raise UnknownElement(a) from None

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self.index

    def __repr__(self):
        return f"{type(self).__name__}({len(self)} elements, {int(self.matrix.sum())} pairs)"

    def leq(self, a, b) -> bool:
        return bool(self.matrix[self._idx(a), self._idx(b)])

    @property
    def pairs(self) -> list[tuple]:
        rows, cols = np.nonzero(self.matrix)
        return [(self.elements[i], self.elements[j]) for i, j in zip(rows, cols)]


class TotalOrder(PartialOrder):
    """A partial order that is also connex; ``chain`` lists elements by rank."""

    kind = "total"

    def __init__(self, elements, pairs):
        super().__init__(elements, pairs)
        # number of elements strictly below; a valid total order makes this a bijection
        below = self.matrix.sum(axis=0) - np.diag(self.matrix)
        order = sorted(range(len(self.elements)), key=lambda i: (below[i], i))
        self.chain = tuple(self.elements[i] for i in order)
        self._rank = {e: r for r, e in enumerate(self.chain)}

    @classmethod
    def from_sequence(cls, sequence) -> "TotalOrder":
        seq = tuple(sequence)
        pairs = [(seq[i], seq[j]) for i in range(len(seq)) for j in range(i, len(seq))]
        return cls(seq, pairs)

    def rank(self, a) -> int:
        self._idx(a)
        return self._rank[a]


class CyclicOrder:
    """A cyclic order stored as a successor map.

    A valid instance has a successor map that is one cycle through every
    element. The triple predicate is defined for any successor map, which
    keeps property checks meaningful on deliberately broken instances.
    """

    kind = "cyclic"

    def __init__(self, elements, successor: Mapping):
        self.elements, self.index = _index_elements(elements)
        succ = {}
        for a, b in successor.items():
            if a not in self.index:
                raise UnknownElement(a)
            if b not in self.index:
                raise UnknownElement(b)
            succ[a] = b
        self.successor = succ

    @classmethod
    def from_sequence(cls, sequence) -> "CyclicOrder":
        seq = tuple(sequence)
        succ = {seq[i]: seq[(i + 1) % len(seq)] for i in range(len(seq))}
        return cls(seq, succ)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self.index

    def __repr__(self):
        return f"CyclicOrder({' -> '.join(map(str, self.sequence()))})"

    def _check(self, a):
        if a not in self.index:
            raise UnknownElement(a)

    def walk(self, start):
        """Elements visited from ``start`` following successors, ``start`` first, no repeats."""
        self._check(start)
        seen = [start]
        visited = {start}
        cur = self.successor.get(start)
        while cur is not None and cur not in visited:
            seen.append(cur)
            visited.add(cur)
            cur = self.successor.get(cur)
        return seen

    def sequence(self) -> list:
        return self.walk(self.elements[0]) if self.elements else []

    def is_single_cycle(self) -> bool:
        n = len(self.elements)
        if n == 0 or len(self.successor) != n:
            return False
        start = self.elements[0]
        path = self.walk(start)
        return len(path) == n and self.successor.get(path[-1]) == start

    def predecessor(self, a):
        self._check(a)
        for x, y in self.successor.items():
            if y == a:
                return x
        return None

    def triple(self, a, b, c) -> bool:
        for x in (a, b, c):
            self._check(x)
        if a == b or b == c or a == c:
            return False
        path = self.walk(a)
        pos = {x: i for i, x in enumerate(path)}
        return b in pos and c in pos and pos[b] < pos[c]

    def triples(self) -> set[tuple]:
        out = set()
        for a in self.elements:
            path = self.walk(a)
            out.update((a, b, c) for b, c in itertools.combinations(path[1:], 2))
        return out


# -- validation ---------------------------------------------------------------

def _check_partial_axioms(po: PartialOrder) -> None:
    m = po.matrix
    n = len(po.elements)
    el = po.elements
    for i in range(n):
        if not m[i, i]:
            raise MissingReflexivePair(el[i])
    for i in range(n):
        for j in range(i + 1, n):
            if m[i, j] and m[j, i]:
                raise AntisymmetryViolation(el[i], el[j])
    for i in range(n):
        for j in np.nonzero(m[i])[0]:
            missing = m[j] & ~m[i]
            if missing.any():
                k = int(np.argmax(missing))
                raise TransitivityViolation(el[i], el[j], el[k])


def _check_pairs_known(elements, pairs):
    known = set(elements)
    pairs = [tuple(p) for p in pairs]
    for p in pairs:
        if len(p) != 2:
            raise ValidationError(f"pair {list(p)!r} must have two components")
        for x in p:
            if x not in known:
                raise UnknownElement(x)
    return pairs


def validate_partial_order(elements, pairs) -> PartialOrder:
    """Build a :class:`PartialOrder`, raising on any axiom violation.

    Reflexive pairs must be listed explicitly and transitivity is checked,
    never completed.
    """
    elements = list(elements)
    pairs = _check_pairs_known(elements, pairs)
    po = PartialOrder(elements, pairs)
    _check_partial_axioms(po)
    return po


def validate_total_order(elements, pairs) -> TotalOrder:
    elements = list(elements)
    pairs = _check_pairs_known(elements, pairs)
    to = TotalOrder(elements, pairs)
    _check_partial_axioms(to)
    m = to.matrix
    comparable = m | m.T
    if not comparable.all():
        i, j = map(int, np.argwhere(~comparable)[0])
        raise IncomparablePair(to.elements[i], to.elements[j])
    return to


def validate_cyclic_order(elements, triples, *, require_unique: bool = False) -> CyclicOrder:
    """Recover the circular arrangement realising every given triple.

    The search inserts elements one at a time into a growing circular
    sequence and prunes on the triples whose components are all placed.
    Underdetermined inputs resolve to the first arrangement in search order
    (declaration order, first slot first) unless ``require_unique`` is set.
    """
    elements, index = _index_elements(elements)
    n = len(elements)
    if n < 3:
        raise TooFewElements(f"a cyclic order needs at least 3 elements, got {n}")
    checked = []
    for t in triples:
        t = tuple(t)
        if len(t) != 3:
            raise ValidationError(f"triple {list(t)!r} must have three components")
        for x in t:
            if x not in index:
                raise UnknownElement(x)
        if len(set(t)) != 3:
            raise DegenerateTriple(t)
        checked.append(tuple(index[x] for x in t))

    # each triple is checked once its last-inserted component is placed
    by_last = {i: [] for i in range(n)}
    for t in set(checked):
        by_last[max(t)].append(t)

    def consistent(seq, new):
        pos = {x: p for p, x in enumerate(seq)}
        for a, b, c in by_last[new]:
            pa, pb, pc = pos[a], pos[b], pos[c]
            # b strictly between a and c walking forward from a
            if not (0 < (pb - pa) % len(seq) < (pc - pa) % len(seq)):
                return False
        return True

    solutions = []
    limit = 2 if require_unique else 1

    def search(seq, k):
        if len(solutions) >= limit:
            return
        if k == n:
            solutions.append(list(seq))
            return
        for slot in range(1, len(seq) + 1):
            cand = seq[:slot] + [k] + seq[slot:]
            if consistent(cand, k):
                search(cand, k + 1)
                if len(solutions) >= limit:
                    return

    search([0], 1)
    if not solutions:
        raise InconsistentTriples("no circular arrangement realises the given triples")
    if require_unique and len(solutions) > 1:
        raise AmbiguousTriples("the given triples admit more than one circular arrangement")
    return CyclicOrder.from_sequence([elements[i] for i in solutions[0]])


def cyclic_from_total(total: TotalOrder) -> CyclicOrder:
    """Close a total order into a cycle: rank order, then maximum back to minimum."""
    if len(total) < 3:
        raise TooFewElements(f"a cyclic order needs at least 3 elements, got {len(total)}")
    return CyclicOrder.from_sequence(total.chain)


def triple_holds(cyc: CyclicOrder, a, b, c) -> bool:
    return cyc.triple(a, b, c)


# -- JSON ---------------------------------------------------------------------

def order_from_json(obj: Mapping):
    """Validate an order description of the form used by the CLI."""
    if not isinstance(obj, Mapping):
        raise ValidationError("order file must hold a JSON object")
    kind = obj.get("kind")
    elements = obj.get("elements")
    if not isinstance(elements, list):
        raise ValidationError("'elements' must be a list")
    if kind == "partial":
        return validate_partial_order(elements, obj.get("pairs", []))
    if kind == "total":
        return validate_total_order(elements, obj.get("pairs", []))
    if kind == "cyclic":
        if "triples" not in obj:
            raise ValidationError("cyclic order file needs 'triples'")
        return validate_cyclic_order(elements, obj["triples"])
    raise ValidationError(f"unknown order kind {kind!r}")


def load_order(path):
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from None
    return order_from_json(obj)
