"""Ordering frame features by MNC area or cycle length.

Keypoints arrive per frame as ``frame_id,x,y`` CSV rows. Each frame is
triangulated, its maximal nuclear clusters found, and one record per
cluster is emitted. Records from all frames are sorted into a chain whose
adjacent pairs are the NEAR pairs of the induced proximity.
"""
from __future__ import annotations

import csv
import io
import logging
import os
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DuplicatePointInFrame,
    FrameGeometryError,
    FrameNotFound,
    MalformedRow,
    TooFewPointsInFrame,
    ValidationError,
)
from .geometry import EPSILON, Point2, delaunay
from .graph import DirectedGraph
from .nerve import find_mncs, maximal_cycle, mnc_area, spoke_complex
from .order import TotalOrder

__all__ = [
    "FrameSet",
    "FramePairRecord",
    "OrderedChain",
    "SmallClusterWarning",
    "ingest_frames",
    "frames_to_csv",
    "generate_frames",
    "frame_records",
    "order_by_mnc_area",
    "order_by_cycle_length",
    "order_frames",
    "chain_graph",
    "frame_subgraph",
    "measure_order",
    "chain_to_csv",
]

logger = logging.getLogger(__name__)

KINDS = ("area", "length")


class SmallClusterWarning(UserWarning):
    """An MNC had too few triangles to close a cycle and was skipped."""


@dataclass(frozen=True)
class FrameSet:
    frames: tuple[tuple[int, tuple[Point2, ...]], ...]

    def __post_init__(self):
        ids = [f for f, _ in self.frames]
        if len(set(ids)) != len(ids):
            raise ValidationError("frame ids must be unique")
        for fid, pts in self.frames:
            if len(pts) < 3:
                raise TooFewPointsInFrame(fid, len(pts))

    def __len__(self):
        return len(self.frames)

    @property
    def frame_ids(self) -> list[int]:
        return [f for f, _ in self.frames]

    @classmethod
    def from_mapping(cls, mapping) -> "FrameSet":
        return cls(tuple(
            (int(fid), tuple(Point2(float(x), float(y)) for x, y in pts))
            for fid, pts in sorted(mapping.items())
        ))


@dataclass(frozen=True)
class FramePairRecord:
    frame_id: int
    feature_id: int
    measure: float
    kind: str

    def __post_init__(self):
        if not self.measure > 0:
            raise ValidationError(f"measure must be positive, got {self.measure!r}")
        if self.kind not in KINDS:
            raise ValidationError(f"unknown measure kind {self.kind!r}")

    @property
    def label(self) -> str:
        return f"f{self.frame_id}_m{self.feature_id}"

    def sort_key(self):
        return (self.measure, self.frame_id, self.feature_id)


@dataclass(frozen=True)
class OrderedChain:
    records: tuple[FramePairRecord, ...]
    kind: str
    skipped: tuple[tuple[int, int, str], ...] = field(default=())

    def __post_init__(self):
        keys = [r.sort_key() for r in self.records]
        if keys != sorted(keys):
            raise ValidationError("chain records are not in ascending (measure, frame, feature) order")

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def measures(self) -> np.ndarray:
        return np.array([r.measure for r in self.records], dtype=float)

    def labels(self) -> list[str]:
        return [r.label for r in self.records]


# -- I/O -----------------------------------------------------------------------

def _open_text(source):
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        return open(source, newline="", encoding="utf-8")
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def ingest_frames(source) -> FrameSet:
    """Read ``frame_id,x,y`` rows from a path, CSV text, or open file."""
    fh = _open_text(source)
    try:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["frame_id", "x", "y"]:
            raise MalformedRow(1, "header must be 'frame_id,x,y'")
        frames: dict[int, list[Point2]] = {}
        seen: dict[int, set] = {}
        for line, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 3:
                raise MalformedRow(line, f"expected 3 fields, got {len(row)}")
            try:
                fid = int(row[0])
                x, y = float(row[1]), float(row[2])
            except ValueError:
                raise MalformedRow(line, "non-numeric field") from None
            if not (np.isfinite(x) and np.isfinite(y)):
                raise MalformedRow(line, "non-finite coordinate")
            p = Point2(x, y)
            if p in seen.setdefault(fid, set()):
                raise DuplicatePointInFrame(fid, p)
            seen[fid].add(p)
            frames.setdefault(fid, []).append(p)
    finally:
        if fh is not source:
            fh.close()
    return FrameSet(tuple((fid, tuple(frames[fid])) for fid in sorted(frames)))


def frames_to_csv(fs: FrameSet) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["frame_id", "x", "y"])
    for fid, pts in fs.frames:
        for p in pts:
            w.writerow([fid, repr(p.x), repr(p.y)])
    return buf.getvalue()


def generate_frames(n_frames: int, n_points: int, seed: int = 0) -> FrameSet:
    """Uniform random keypoints in the unit square, one seeded stream for all frames."""
    if n_frames < 1:
        raise ValidationError("need at least one frame")
    if n_points < 3:
        raise ValidationError("need at least 3 points per frame")
    rng = np.random.default_rng(seed)
    frames = []
    for fid in range(1, n_frames + 1):
        xy = np.round(rng.random((n_points, 2)), 6)
        xy = np.unique(xy, axis=0)
        while len(xy) < n_points:
            xy = np.unique(np.vstack([xy, np.round(rng.random((1, 2)), 6)]), axis=0)
        rng.shuffle(xy)
        frames.append((fid, tuple(Point2(float(x), float(y)) for x, y in xy)))
    return FrameSet(tuple(frames))


def chain_to_csv(chain: OrderedChain) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["rank", "frame_id", "feature_id", "measure"])
    for rank, r in enumerate(chain.records, start=1):
        w.writerow([rank, r.frame_id, r.feature_id, f"{r.measure:.9g}"])
    return buf.getvalue()


# -- per-frame records and chains ---------------------------------------------

def frame_records(frame_id: int, points, kind: str, eps: float = EPSILON):
    """Records for one frame, plus ``(frame, feature, reason)`` for skipped clusters.

    Feature ids number the frame's MNCs from 1 in nucleus-index order.
    """
    if kind not in KINDS:
        raise ValidationError(f"unknown measure kind {kind!r}")
    try:
        tri = delaunay(points, eps=eps)
        mncs = find_mncs(tri)
        records, skipped = [], []
        for j, mnc in enumerate(mncs, start=1):
            if kind == "area":
                records.append(FramePairRecord(frame_id, j, mnc_area(tri, mnc), kind))
                continue
            if len(mnc.triangles) < 3:
                skipped.append((frame_id, j, f"MNC has {len(mnc.triangles)} triangles"))
                continue
            cyc = maximal_cycle(tri, spoke_complex(tri, mnc, 1), eps=eps)
            records.append(FramePairRecord(frame_id, j, cyc.length, kind))
    except ValidationError as exc:
        raise FrameGeometryError(frame_id, exc) from exc
    return records, skipped


def order_frames(fs: FrameSet, kind: str, eps: float = EPSILON) -> OrderedChain:
    records, skipped = [], []
    for fid, pts in fs.frames:
        recs, skip = frame_records(fid, pts, kind, eps)
        records += recs
        skipped += skip
    for fid, j, reason in skipped:
        msg = f"frame {fid} MNC {j} skipped: {reason}"
        logger.warning(msg)
        warnings.warn(msg, SmallClusterWarning, stacklevel=3)
    records.sort(key=FramePairRecord.sort_key)
    return OrderedChain(tuple(records), kind, tuple(skipped))


def order_by_mnc_area(fs: FrameSet, eps: float = EPSILON) -> OrderedChain:
    return order_frames(fs, "area", eps)


def order_by_cycle_length(fs: FrameSet, eps: float = EPSILON) -> OrderedChain:
    return order_frames(fs, "length", eps)


# -- chain graph and per-frame subgraphs ------------------------------------------

def _edge(records, i):
    a, b = records[i], records[i + 1]
    return (a.label, b.label, b.measure / a.measure)


def chain_graph(chain: OrderedChain) -> DirectedGraph:
    """Path through the chain; each edge weighs destination over origin measure."""
    recs = chain.records
    return DirectedGraph(
        [r.label for r in recs], [_edge(recs, i) for i in range(len(recs) - 1)]
    )


def frame_subgraph(chain: OrderedChain, k: int) -> DirectedGraph:
    """Chain neighbourhood of every record from frame ``k``."""
    recs = chain.records
    hits = [i for i, r in enumerate(recs) if r.frame_id == k]
    if not hits:
        raise FrameNotFound(k)
    last = len(recs) - 1
    verts: dict[str, None] = {}
    edges: dict[tuple, tuple] = {}
    for i in hits:
        if i == 0 and i == last:
            span = [i]
        elif i == 0:
            span = [i, i + 1]
        elif i == last:
            span = [i - 1, i]
        else:
            span = [i - 1, i, i + 1]
        for s in span:
            verts[recs[s].label] = None
        for s in span[:-1]:
            e = _edge(recs, s)
            edges[e[:2]] = e
    return DirectedGraph(list(verts), list(edges.values()))


def measure_order(chain: OrderedChain) -> TotalOrder:
    """The total order ``<=`` on the distinct measures of a chain."""
    values = sorted({r.measure for r in chain.records})
    return TotalOrder.from_sequence([f"{v:.17g}" for v in values])
