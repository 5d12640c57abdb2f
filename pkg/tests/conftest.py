import itertools
import math
import random

import numpy as np
import pytest

from ordprox.order import CyclicOrder, PartialOrder, TotalOrder, validate_partial_order


def subset_label(s):
    return "{" + ",".join(sorted(s)) + "}"


def powerset_lattice(base="xyz"):
    subsets = [frozenset(c) for r in range(len(base) + 1) for c in itertools.combinations(base, r)]
    labels = [subset_label(s) for s in subsets]
    pairs = [(subset_label(a), subset_label(b)) for a in subsets for b in subsets if a <= b]
    return labels, pairs


def all_posets(n):
    """Every labelled partial order on n elements (3 states per unordered pair, filtered)."""
    el = [f"e{i}" for i in range(n)]
    unordered = list(itertools.combinations(range(n), 2))
    for states in itertools.product((0, 1, 2), repeat=len(unordered)):
        m = np.eye(n, dtype=bool)
        for (i, j), s in zip(unordered, states):
            if s == 1:
                m[i, j] = True
            elif s == 2:
                m[j, i] = True
        # transitive iff m @ m adds nothing
        if ((m.astype(int) @ m.astype(int)) > 0).sum() != m.sum():
            continue
        yield PartialOrder(el, [(el[i], el[j]) for i, j in zip(*np.nonzero(m))])


def random_partial_order(rng: random.Random, n, density=None):
    el = [f"p{i}" for i in range(n)]
    perm = el[:]
    rng.shuffle(perm)
    density = rng.random() if density is None else density
    m = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                m[i, j] = True
    for k in range(n):
        m |= np.outer(m[:, k], m[k])
    pairs = [(perm[i], perm[j]) for i, j in zip(*np.nonzero(m))]
    return validate_partial_order(el, pairs)


def random_total_order(rng: random.Random, n):
    seq = [f"t{i}" for i in range(n)]
    rng.shuffle(seq)
    return TotalOrder.from_sequence(seq)


def random_cyclic_order(rng: random.Random, n):
    seq = [f"c{i}" for i in range(n)]
    rng.shuffle(seq)
    return CyclicOrder.from_sequence(seq)


def hexagon_fan(radius=1.0, center=(0.0, 0.0)):
    cx, cy = center
    ring = [
        (cx + radius * math.cos(k * math.pi / 3), cy + radius * math.sin(k * math.pi / 3))
        for k in range(6)
    ]
    return [(cx, cy)] + ring


def two_ring_fan():
    """Center, a hexagon at radius 1 and a rotated hexagon at radius 2."""
    pts = [(0.0, 0.0)]
    pts += [(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)]
    pts += [
        (2 * math.cos(k * math.pi / 3 + math.pi / 6), 2 * math.sin(k * math.pi / 3 + math.pi / 6))
        for k in range(6)
    ]
    return pts


def square_fan(half=1.5):
    """Center plus square corners; the four fan triangles have centroids (+-1, 0), (0, +-1) at half=1.5."""
    return [(0.0, 0.0), (half, half), (-half, half), (-half, -half), (half, -half)]


@pytest.fixture
def b3():
    labels, pairs = powerset_lattice()
    return validate_partial_order(labels, pairs)


@pytest.fixture
def five_cycle():
    return CyclicOrder.from_sequence(["v1", "v2", "v3", "v4", "v5"])


@pytest.fixture
def window():
    return TotalOrder.from_sequence(list(range(6)))
