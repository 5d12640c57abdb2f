"""scikit-learn style front end for the frame-ordering pipeline."""
from __future__ import annotations

from collections.abc import Mapping

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .errors import DuplicatePointInFrame, ValidationError
from .frames import (
    KINDS,
    FrameSet,
    chain_graph,
    frame_records,
    frame_subgraph,
    order_frames,
)
from .geometry import EPSILON

__all__ = ["check_points", "check_frames", "FrameChainOrderer"]


def check_points(X) -> np.ndarray:
    """Validate a point cloud as a finite float array of shape (n, 2), n >= 3."""
    arr = check_array(X, dtype=np.float64, ensure_min_samples=3)
    if arr.shape[1] != 2:
        raise ValidationError(f"points must have 2 columns, got {arr.shape[1]}")
    return arr


def check_frames(X) -> FrameSet:
    """Coerce ``X`` into a :class:`FrameSet`.

    Accepts a FrameSet, a mapping ``frame_id -> points``, or an array-like
    (including a DataFrame) with columns ``frame_id, x, y``.
    """
    if isinstance(X, FrameSet):
        return X
    if isinstance(X, Mapping):
        return FrameSet.from_mapping({k: check_points(v) for k, v in X.items()})
    arr = check_array(X, dtype=np.float64, ensure_min_samples=3)
    if arr.shape[1] != 3:
        raise ValidationError(f"frame rows must have 3 columns (frame_id, x, y), got {arr.shape[1]}")
    ids = arr[:, 0]
    if not np.all(ids == np.round(ids)):
        raise ValidationError("frame ids must be integers")
    frames = {}
    for fid in np.unique(ids):
        pts = arr[ids == fid, 1:]
        uniq = np.unique(pts, axis=0)
        if len(uniq) != len(pts):
            raise DuplicatePointInFrame(int(fid), uniq[0])
        frames[int(fid)] = pts
    return FrameSet.from_mapping(frames)


class FrameChainOrderer(TransformerMixin, BaseEstimator):
    """Learn the ascending chain of frame-MNC (or frame-cycle) pairs.

    Parameters
    ----------
    by : {"area", "length"}
        Order MNCs by total triangle area, or by the perimeter of the
        centroid cycle around each MNC.
    epsilon : float
        Absolute tolerance for the geometric predicates.

    Attributes
    ----------
    chain_ : OrderedChain
    graph_ : DirectedGraph
        The chain as a weighted path.
    n_frames_ : int
    """

    def __init__(self, by: str = "area", epsilon: float = EPSILON):
        self.by = by
        self.epsilon = epsilon

    def _check_params(self):
        if self.by not in KINDS:
            raise ValueError(f"by must be one of {KINDS}, got {self.by!r}")
        if not self.epsilon >= 0:
            raise ValueError("epsilon must be non-negative")

    def fit(self, X, y=None):
        self._check_params()
        fs = check_frames(X)
        self.chain_ = order_frames(fs, self.by, self.epsilon)
        self.graph_ = chain_graph(self.chain_)
        self.n_frames_ = len(fs)
        return self

    def transform(self, X):
        """Per-record rows ``[frame_id, feature_id, measure, position]``.

        ``position`` is where the record would be inserted in the fitted
        chain (0 = before every fitted record).
        """
        check_is_fitted(self, "chain_")
        fs = check_frames(X)
        fitted = self.chain_.measures
        rows = []
        for fid, pts in fs.frames:
            recs, _ = frame_records(fid, pts, self.by, self.epsilon)
            for r in recs:
                pos = np.searchsorted(fitted, r.measure, side="right")
                rows.append([r.frame_id, r.feature_id, r.measure, pos])
        return np.array(rows, dtype=float).reshape(-1, 4)

    def subgraph(self, frame_id: int):
        check_is_fitted(self, "chain_")
        return frame_subgraph(self.chain_, frame_id)
