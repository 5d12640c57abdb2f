"""Vertex-star nerves and the spoke and cycle constructions around them.

Two triangles intersect when they share at least one vertex, so a nerve
here is a vertex star and its nucleus is the shared vertex.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

from .errors import CoincidentCentroid, InvalidLevel, TooFewTriangles
from .geometry import EPSILON, Point2, Triangulation, centroid, orientation_angle, triangle_area
from .graph import DirectedGraph
from .order import CyclicOrder

__all__ = [
    "NerveCluster",
    "SpokeComplex",
    "MaximalCycle",
    "vertex_stars",
    "find_mncs",
    "spoke_complex",
    "spoke_levels",
    "maximal_cycle",
    "cycle_through",
    "mnc_area",
    "vortex",
]


@dataclass(frozen=True)
class NerveCluster:
    nucleus: int
    triangles: tuple[int, ...]

    def __len__(self):
        return len(self.triangles)


@dataclass(frozen=True)
class SpokeComplex:
    k: int
    triangles: tuple[int, ...]
    nucleus: int | None = None

    def __len__(self):
        return len(self.triangles)


@dataclass(frozen=True)
class MaximalCycle:
    k: int
    triangles: tuple[int, ...]
    vertices: tuple[Point2, ...]
    angles: tuple[float, ...]
    length: float
    center: Point2

    def __len__(self):
        return len(self.vertices)

    def labels(self) -> list[str]:
        return [f"t{t}" for t in self.triangles]

    def cyclic_order(self) -> CyclicOrder:
        """The visiting order as a cyclic order over triangle labels."""
        return CyclicOrder.from_sequence(self.labels())

    def as_graph(self) -> DirectedGraph:
        lab = self.labels()
        n = len(lab)
        return DirectedGraph(lab, [(lab[i], lab[(i + 1) % n]) for i in range(n)])

    def to_dict(self):
        return {
            "k": self.k,
            "triangles": list(self.triangles),
            "vertices": [[p.x, p.y] for p in self.vertices],
            "length": self.length,
        }


def vertex_stars(tri: Triangulation) -> dict[int, list[int]]:
    stars = defaultdict(list)
    for t, (i, j, k) in enumerate(tri.triangles):
        for v in (i, j, k):
            stars[v].append(t)
    return dict(stars)


def find_mncs(tri: Triangulation) -> list[NerveCluster]:
    """Every vertex whose star is as large as any other, by vertex index."""
    stars = vertex_stars(tri)
    if not stars:
        return []
    top = max(len(s) for s in stars.values())
    return [
        NerveCluster(v, tuple(sorted(stars[v])))
        for v in sorted(stars)
        if len(stars[v]) == top
    ]


def spoke_levels(tri: Triangulation, mnc: NerveCluster, max_k: int) -> list[SpokeComplex]:
    """Levels 1..max_k of the spoke construction around ``mnc.nucleus``.

    Level 0 is the nucleus vertex alone. Level k >= 2 collects triangles
    sharing a vertex with level k-1 and no vertex with level k-2.
    """
    if max_k < 1:
        raise InvalidLevel(f"spoke level must be >= 1, got {max_k}")
    verts_of = [set(t) for t in tri.triangles]
    prev2_verts = {mnc.nucleus}
    level = tuple(sorted(mnc.triangles))
    out = [SpokeComplex(1, level, mnc.nucleus)]
    for k in range(2, max_k + 1):
        prev_verts = set().union(*(verts_of[t] for t in level)) if level else set()
        level = tuple(
            t for t, vs in enumerate(verts_of)
            if vs & prev_verts and not vs & prev2_verts
        )
        prev2_verts = prev_verts
        out.append(SpokeComplex(k, level, mnc.nucleus))
    return out


def spoke_complex(tri: Triangulation, mnc: NerveCluster, k: int) -> SpokeComplex:
    return spoke_levels(tri, mnc, k)[-1]


def cycle_through(points, labels=None, *, k: int = 1, eps: float = EPSILON) -> MaximalCycle:
    """Close a cycle through ``points`` in increasing angle about their mean.

    Equal angles are ordered by distance from the mean, then by label.
    """
    pts = [Point2(float(p[0]), float(p[1])) for p in points]
    if len(pts) < 3:
        raise TooFewTriangles(f"a cycle needs at least 3 vertices, got {len(pts)}")
    labels = list(range(len(pts))) if labels is None else list(labels)
    u = Point2(sum(p.x for p in pts) / len(pts), sum(p.y for p in pts) / len(pts))
    keyed = []
    for lab, p in zip(labels, pts):
        d = math.hypot(p.x - u.x, p.y - u.y)
        if d <= eps:
            raise CoincidentCentroid(f"vertex {lab!r} coincides with the cycle center")
        keyed.append((orientation_angle(p, u), d, lab, p))
    keyed.sort(key=lambda r: (r[0], r[1], r[2]))
    verts = [r[3] for r in keyed]
    n = len(verts)
    length = sum(
        math.hypot(verts[(i + 1) % n].x - verts[i].x, verts[(i + 1) % n].y - verts[i].y)
        for i in range(n)
    )
    return MaximalCycle(
        k=k,
        triangles=tuple(r[2] for r in keyed),
        vertices=tuple(verts),
        angles=tuple(r[0] for r in keyed),
        length=length,
        center=u,
    )


def maximal_cycle(tri: Triangulation, skcx: SpokeComplex, *, eps: float = EPSILON) -> MaximalCycle:
    if len(skcx.triangles) < 3:
        raise TooFewTriangles(
            f"level {skcx.k} has {len(skcx.triangles)} triangles, need at least 3"
        )
    cents = [centroid(tri.triangles[t], tri.points) for t in skcx.triangles]
    return cycle_through(cents, skcx.triangles, k=skcx.k, eps=eps)


def mnc_area(tri: Triangulation, mnc: NerveCluster) -> float:
    return sum(triangle_area(tri.triangles[t], tri.points) for t in mnc.triangles)


def vortex(tri: Triangulation, mnc: NerveCluster, max_k: int) -> list[MaximalCycle]:
    """Per-level cycles up to ``max_k``, skipping levels with fewer than 3 triangles."""
    return [
        maximal_cycle(tri, level)
        for level in spoke_levels(tri, mnc, max_k)
        if len(level.triangles) >= 3
    ]
