"""Planar primitives and Delaunay triangulation.

Predicates use a fixed absolute tolerance (``EPSILON``) sized for
unit-scale coordinates; every public function accepts an override.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import AllCollinear, CoincidentPoint, DuplicatePoint, TooFewPoints, ValidationError

__all__ = [
    "EPSILON",
    "Point2",
    "Triangle",
    "Triangulation",
    "orient",
    "incircle",
    "delaunay",
    "triangle_area",
    "centroid",
    "orientation_angle",
]

EPSILON = 1e-9
GHOST = -1
# cocircularity is decided at rounding-noise level, never looser than eps
TIE_RELATIVE = 1e-12


class Point2(NamedTuple):
    x: float
    y: float


class Triangle(NamedTuple):
    i: int
    j: int
    k: int


@dataclass(frozen=True)
class Triangulation:
    points: tuple[Point2, ...]
    triangles: tuple[Triangle, ...]

    def vertices_of(self, t: int) -> tuple[Point2, Point2, Point2]:
        i, j, k = self.triangles[t]
        return self.points[i], self.points[j], self.points[k]

    def to_dict(self):
        return {
            "points": [[p.x, p.y] for p in self.points],
            "triangles": [list(t) for t in self.triangles],
        }


def _as_point(p) -> Point2:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValidationError(f"non-finite coordinate in {tuple(p)!r}")
    return Point2(x, y)


def orient(a, b, c) -> float:
    """Twice the signed area of ``abc``; positive when counter-clockwise."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def incircle(a, b, c, d) -> float:
    """Positive when ``d`` lies inside the circumcircle of counter-clockwise ``abc``."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    return (
        (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
        + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady)
    )


def _incircle_scale(a, b, c, d) -> float:
    """Sum of absolute terms of ``incircle``; rounding error is a small multiple of it."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    return (
        (adx * adx + ady * ady) * (abs(bdx * cdy) + abs(cdx * bdy))
        + (bdx * bdx + bdy * bdy) * (abs(cdx * ady) + abs(adx * cdy))
        + (cdx * cdx + cdy * cdy) * (abs(adx * bdy) + abs(bdx * ady))
    )


def triangle_area(t, points) -> float:
    a, b, c = (points[i] for i in t)
    return abs(orient(a, b, c)) / 2.0


def centroid(t, points) -> Point2:
    a, b, c = (points[i] for i in t)
    return Point2((a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0)


def orientation_angle(p, origin) -> float:
    """Angle of ``p - origin`` in (-pi, pi]."""
    dx, dy = p[0] - origin[0], p[1] - origin[1]
    if dx == 0 and dy == 0:
        raise CoincidentPoint(f"{tuple(p)!r} coincides with the origin")
    theta = math.atan2(dy, dx)
    return math.pi if theta == -math.pi else theta


# -- Bowyer-Watson ---------------------------------------------------------------

class _Mesh:
    """Triangles keyed by their directed edges; ghost triangles close the hull."""

    def __init__(self, pts, eps):
        self.pts = pts
        self.eps = eps
        self.tris = set()
        self.by_edge = {}

    def add(self, t):
        self.tris.add(t)
        a, b, c = t
        for e in ((a, b), (b, c), (c, a)):
            self.by_edge[e] = t

    def remove(self, t):
        self.tris.discard(t)
        a, b, c = t
        for e in ((a, b), (b, c), (c, a)):
            if self.by_edge.get(e) == t:
                del self.by_edge[e]

    def conflicts(self, t, p) -> bool:
        a, b, c = t
        P = self.pts
        if c == GHOST:
            o = orient(P[a], P[b], p)
            if o > 0:
                return True
            if o == 0:
                # on the hull line: conflict only inside the open segment
                ab = (P[b][0] - P[a][0], P[b][1] - P[a][1])
                t0 = (p[0] - P[a][0]) * ab[0] + (p[1] - P[a][1]) * ab[1]
                return 0 < t0 < ab[0] * ab[0] + ab[1] * ab[1]
            return False
        return incircle(P[a], P[b], P[c], p) > self.eps

    def _seed(self, p):
        P = self.pts
        best, best_score = None, -math.inf
        for t in self.tris:
            a, b, c = t
            if c == GHOST:
                score = orient(P[a], P[b], p)
            else:
                score = min(orient(P[a], P[b], p), orient(P[b], P[c], p), orient(P[c], P[a], p))
            if score > best_score:
                best, best_score = t, score
        return best

    def insert(self, k):
        p = self.pts[k]
        seed = self._seed(p)
        bad = {seed}
        queue = deque([seed])
        while queue:
            t = queue.popleft()
            a, b, c = t
            for u, v in ((a, b), (b, c), (c, a)):
                nb = self.by_edge.get((v, u))
                if nb is not None and nb not in bad and self.conflicts(nb, p):
                    bad.add(nb)
                    queue.append(nb)
        # grow the cavity until every new real triangle is counter-clockwise
        while True:
            grow = None
            for t in bad:
                a, b, c = t
                for u, v in ((a, b), (b, c), (c, a)):
                    if GHOST in (u, v):
                        continue
                    nb = self.by_edge.get((v, u))
                    if nb in bad:
                        continue
                    if orient(self.pts[u], self.pts[v], p) <= 0 and nb is not None:
                        grow = nb
                        break
                if grow is not None:
                    break
            if grow is None:
                break
            bad.add(grow)
        boundary = []
        for t in bad:
            a, b, c = t
            for u, v in ((a, b), (b, c), (c, a)):
                if self.by_edge.get((v, u)) not in bad:
                    boundary.append((u, v))
        for t in bad:
            self.remove(t)
        for u, v in boundary:
            if u == GHOST:
                self.add((v, k, GHOST))
            elif v == GHOST:
                self.add((k, u, GHOST))
            else:
                self.add((u, v, k))

    def real(self):
        return [t for t in self.tris if GHOST not in t]


def _flip(mesh: _Mesh, t, other, u, v, w1, w2):
    mesh.remove(t)
    mesh.remove(other)
    mesh.add((u, w2, w1))
    mesh.add((w2, v, w1))


def _legalize(mesh: _Mesh, ties: bool) -> bool:
    """One sweep of edge flips; returns whether anything changed.

    Without ``ties``, flip edges whose opposite vertex lies inside the
    circumcircle by any margin (Lawson); a tolerance here would compound
    into larger global violations. With ``ties``, flip cocircular diagonals toward
    the one with the lexicographically smallest endpoint; each such flip
    lowers the multiset of per-edge minimum endpoints, so sweeps terminate.
    """
    P, eps = mesh.pts, mesh.eps
    for t in sorted(mesh.real()):
        if t not in mesh.tris:
            continue
        for u, v, w1 in ((t[0], t[1], t[2]), (t[1], t[2], t[0]), (t[2], t[0], t[1])):
            other = mesh.by_edge.get((v, u))
            if other is None or GHOST in other:
                continue
            w2 = next(x for x in other if x not in (u, v))
            # both new triangles must be proper, i.e. the quad is convex
            if orient(P[u], P[w2], P[w1]) <= 0 or orient(P[w2], P[v], P[w1]) <= 0:
                continue
            det = incircle(P[u], P[v], P[w1], P[w2])
            if ties:
                tol = min(eps, TIE_RELATIVE * _incircle_scale(P[u], P[v], P[w1], P[w2]))
                flip = abs(det) <= tol and min(P[w1], P[w2]) < min(P[u], P[v])
            else:
                flip = det > 0
            if flip:
                _flip(mesh, t, other, u, v, w1, w2)
                return True
    return False


def _canonical(t: Sequence[int]) -> Triangle:
    r = min(range(3), key=lambda i: t[i])
    return Triangle(t[r], t[(r + 1) % 3], t[(r + 2) % 3])


def delaunay(points, eps: float = EPSILON) -> Triangulation:
    """Delaunay triangulation by incremental Bowyer-Watson insertion.

    Points are inserted in lexicographic order, so the result does not
    depend on input order. Triangles come back counter-clockwise, each
    starting at its smallest vertex index, sorted.
    """
    pts = tuple(_as_point(p) for p in points)
    n = len(pts)
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    order = sorted(range(n), key=lambda i: pts[i])
    for i, j in zip(order, order[1:]):
        if pts[i] == pts[j]:
            raise DuplicatePoint(f"point {tuple(pts[i])!r} appears more than once")

    a, b = order[0], order[1]
    c = next((k for k in order[2:] if abs(orient(pts[a], pts[b], pts[k])) > eps), None)
    if c is None:
        raise AllCollinear("all points are collinear")
    if orient(pts[a], pts[b], pts[c]) < 0:
        a, b = b, a

    mesh = _Mesh(pts, eps)
    mesh.add((a, b, c))
    mesh.add((b, a, GHOST))
    mesh.add((c, b, GHOST))
    mesh.add((a, c, GHOST))
    for k in order:
        if k not in (a, b, c):
            mesh.insert(k)
    budget = 10 * n * n
    while budget and _legalize(mesh, ties=False):
        budget -= 1
    while _legalize(mesh, ties=True):
        pass
    tris = sorted(_canonical(t) for t in mesh.real())
    return Triangulation(pts, tuple(tris))
