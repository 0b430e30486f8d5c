"""Geometric primitives: weighted points/rectangles, grid bucketing, predicates.

Conventions used throughout the library:

* unit-disk adjacency is squared-distance <= 4, with no floating tolerance
  (distance exactly 2 is an edge; independence requires distance strictly > 2);
* grid cells are half-open ``[a, a + side)`` per axis, so every point lands in
  exactly one bucket;
* rectangle adjacency is open-interior intersection (touching boundaries are
  not edges).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptyInput, NonPositiveSide

# Coordinates whose floor-key might not fit a signed 64-bit grid key are
# rejected at ingestion.
MAX_ABS_COORD = float(2 ** 62)


@dataclass(frozen=True)
class WeightedPoint:
    """A planar point with a positive weight and a stable input ordinal."""

    x: float
    y: float
    w: float = 1.0
    idx: int = 0


@dataclass(frozen=True)
class WeightedRect:
    """An axis-aligned rectangle given by center, extents, weight, ordinal."""

    cx: float
    cy: float
    width: float
    height: float
    w: float = 1.0
    idx: int = 0


@dataclass
class Solution:
    """Indices selected from an instance plus the objective they achieve.

    ``objective`` is total weight for maximisation problems and cardinality
    for DS/VC.  ``meta`` carries solver provenance (grid parameter, winning
    shift, coreset sizes, elapsed time).
    """

    indices: list[int]
    objective: float
    kind: str
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.indices)


class PointSet(Sequence):
    """Array-backed sequence of :class:`WeightedPoint`.

    Solvers accept any sequence of points and convert once; generators return
    this type directly so million-point instances stay in flat numpy arrays.
    """

    __slots__ = ("xs", "ys", "ws")

    def __init__(self, xs, ys, ws):
        self.xs = np.ascontiguousarray(xs, dtype=np.float64)
        self.ys = np.ascontiguousarray(ys, dtype=np.float64)
        self.ws = np.ascontiguousarray(ws, dtype=np.float64)
        if not (len(self.xs) == len(self.ys) == len(self.ws)):
            raise ValueError("coordinate/weight arrays differ in length")
        validate_coords(self.xs)
        validate_coords(self.ys)
        if len(self.ws) and not (np.isfinite(self.ws).all() and (self.ws > 0).all()):
            raise ValueError("weights must be finite and strictly positive")

    @classmethod
    def from_points(cls, points: Iterable[WeightedPoint]) -> "PointSet":
        if isinstance(points, cls):
            return points
        pts = list(points)
        return cls(
            np.array([p.x for p in pts], dtype=np.float64),
            np.array([p.y for p in pts], dtype=np.float64),
            np.array([p.w for p in pts], dtype=np.float64),
        )

    def __len__(self) -> int:
        return len(self.xs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return PointSet(self.xs[i], self.ys[i], self.ws[i])
        return WeightedPoint(float(self.xs[i]), float(self.ys[i]), float(self.ws[i]), int(i) % len(self))

    def __iter__(self) -> Iterator[WeightedPoint]:
        for i in range(len(self)):
            yield WeightedPoint(float(self.xs[i]), float(self.ys[i]), float(self.ws[i]), i)


class RectSet(Sequence):
    """Array-backed sequence of :class:`WeightedRect`."""

    __slots__ = ("cxs", "cys", "widths", "heights", "ws")

    def __init__(self, cxs, cys, widths, heights, ws):
        self.cxs = np.ascontiguousarray(cxs, dtype=np.float64)
        self.cys = np.ascontiguousarray(cys, dtype=np.float64)
        self.widths = np.ascontiguousarray(widths, dtype=np.float64)
        self.heights = np.ascontiguousarray(heights, dtype=np.float64)
        self.ws = np.ascontiguousarray(ws, dtype=np.float64)
        lens = {len(a) for a in (self.cxs, self.cys, self.widths, self.heights, self.ws)}
        if len(lens) != 1:
            raise ValueError("rect arrays differ in length")
        validate_coords(self.cxs)
        validate_coords(self.cys)
        if len(self.ws) and not (np.isfinite(self.ws).all() and (self.ws > 0).all()):
            raise ValueError("weights must be finite and strictly positive")

    @classmethod
    def from_rects(cls, rects: Iterable[WeightedRect]) -> "RectSet":
        if isinstance(rects, cls):
            return rects
        rs = list(rects)
        return cls(
            np.array([r.cx for r in rs], dtype=np.float64),
            np.array([r.cy for r in rs], dtype=np.float64),
            np.array([r.width for r in rs], dtype=np.float64),
            np.array([r.height for r in rs], dtype=np.float64),
            np.array([r.w for r in rs], dtype=np.float64),
        )

    def __len__(self) -> int:
        return len(self.cxs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return RectSet(self.cxs[i], self.cys[i], self.widths[i], self.heights[i], self.ws[i])
        return WeightedRect(
            float(self.cxs[i]), float(self.cys[i]),
            float(self.widths[i]), float(self.heights[i]),
            float(self.ws[i]), int(i) % len(self),
        )

    def __iter__(self) -> Iterator[WeightedRect]:
        for i in range(len(self)):
            yield self[i]


def validate_coords(arr: np.ndarray) -> None:
    if len(arr) == 0:
        return
    if not np.isfinite(arr).all():
        raise ValueError("coordinates must be finite")
    if np.abs(arr).max() >= MAX_ABS_COORD:
        raise ValueError("coordinate magnitude too large for 64-bit grid keys")


def udg_adjacent(p: WeightedPoint, q: WeightedPoint) -> bool:
    """True iff the unit disks centered at p and q intersect (distance <= 2)."""
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy <= 4.0


def rect_intersects(a: WeightedRect, b: WeightedRect) -> bool:
    """True iff the open interiors of a and b intersect."""
    return (
        abs(a.cx - b.cx) < (a.width + b.width) / 2.0
        and abs(a.cy - b.cy) < (a.height + b.height) / 2.0
    )


def rect_overlap(a: WeightedRect, b: WeightedRect) -> float:
    """Minimum horizontal-or-vertical translation separating the interiors.

    Zero when the interiors are already disjoint.
    """
    ox = (a.width + b.width) / 2.0 - abs(a.cx - b.cx)
    oy = (a.height + b.height) / 2.0 - abs(a.cy - b.cy)
    if ox <= 0.0 or oy <= 0.0:
        return 0.0
    return min(ox, oy)


def bounding_box(points) -> tuple[float, float, float, float]:
    """(xmin, ymin, xmax, ymax) of a non-empty point sequence."""
    ps = PointSet.from_points(points)
    if len(ps) == 0:
        raise EmptyInput("bounding_box of empty point set")
    return (
        float(ps.xs.min()),
        float(ps.ys.min()),
        float(ps.xs.max()),
        float(ps.ys.max()),
    )


def diam_upper(points) -> float:
    """Diagonal of the bounding box: an upper bound on the true diameter."""
    xmin, ymin, xmax, ymax = bounding_box(points)
    return math.hypot(xmax - xmin, ymax - ymin)


class GridIndex:
    """Hash grid over points: integer floor-keys to lists of ordinals.

    Cells are half-open ``[a, a + side)`` per axis.  Immutable after
    construction.
    """

    __slots__ = ("root", "side", "buckets")

    def __init__(self, root: tuple[float, float], side: float, buckets: dict):
        self.root = root
        self.side = side
        self.buckets = buckets

    def key_of(self, x: float, y: float) -> tuple[int, int]:
        return (
            int(math.floor((x - self.root[0]) / self.side)),
            int(math.floor((y - self.root[1]) / self.side)),
        )

    def __getitem__(self, key) -> list[int]:
        return self.buckets.get(key, [])


def build_grid(points, side: float, root: tuple[float, float] = (0.0, 0.0)) -> GridIndex:
    """Bucket every point ordinal under its floor-key."""
    if side <= 0:
        raise NonPositiveSide(f"grid side must be > 0, got {side}")
    ps = PointSet.from_points(points)
    buckets: dict[tuple[int, int], list[int]] = {}
    if len(ps):
        us = np.floor((ps.xs - root[0]) / side).astype(np.int64)
        vs = np.floor((ps.ys - root[1]) / side).astype(np.int64)
        for i in range(len(ps)):
            buckets.setdefault((int(us[i]), int(vs[i])), []).append(i)
    return GridIndex(root, side, buckets)


class Grid4Index:
    """4-D hash grid over rectangles viewed as (cx, cy, width, height)."""

    __slots__ = ("root", "side", "buckets")

    def __init__(self, root: tuple[float, float, float, float], side: float, buckets: dict):
        self.root = root
        self.side = side
        self.buckets = buckets

    def key_of(self, r: WeightedRect) -> tuple[int, int, int, int]:
        return tuple(
            int(math.floor((v - o) / self.side))
            for v, o in zip((r.cx, r.cy, r.width, r.height), self.root)
        )

    def __getitem__(self, key) -> list[int]:
        return self.buckets.get(key, [])


def build_grid4(rects, side: float, root: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)) -> Grid4Index:
    if side <= 0:
        raise NonPositiveSide(f"grid side must be > 0, got {side}")
    rs = RectSet.from_rects(rects)
    buckets: dict[tuple[int, int, int, int], list[int]] = {}
    if len(rs):
        keys = [
            np.floor((arr - o) / side).astype(np.int64)
            for arr, o in zip((rs.cxs, rs.cys, rs.widths, rs.heights), root)
        ]
        for i in range(len(rs)):
            buckets.setdefault(tuple(int(k[i]) for k in keys), []).append(i)
    return Grid4Index(root, side, buckets)
