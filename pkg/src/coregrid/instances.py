"""Instance generation, text-file ingestion and serialization.

The generators are driven by a splitmix64 stream so that the same seed
yields byte-identical instances on any platform:

    state_j = (seed + (j + 1) * 0x9E3779B97F4A7C15) mod 2^64
    z = state_j
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2^64
    draw_j = z ^ (z >> 31)

uniform doubles are ``(draw_j >> 11) * 2^-53`` in [0, 1).

File formats (UTF-8, LF):

* points: one record per line, ``x y w [t]`` with optional ``t`` in {0, 1}
  marking membership in the target subset (default 1); ``#`` starts a comment;
* rects: ``cx cy width height w``; an optional ``# lambda=<value>`` header
  records the side-length bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadRange,
    BoxTooSmall,
    InvalidWeight,
    LambdaTooSmall,
    ParseError,
    SideOutOfRange,
)
from .geom import MAX_ABS_COORD, PointSet, RectSet

_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Sequential splitmix64 stream (python-int state, no overflow traps)."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_double(self) -> float:
        return (self.next_u64() >> 11) * (2.0 ** -53)


def _stream_doubles(seed: int, count: int) -> np.ndarray:
    """Vectorized draws 0..count-1 of the splitmix64 stream for ``seed``."""
    with np.errstate(over="ignore"):
        idx = np.arange(1, count + 1, dtype=np.uint64)
        z = np.uint64(seed & _MASK64) + idx * np.uint64(_GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)


def gen_uniform_points(n: int, box_side: float, weight_range: tuple[float, float] = (0.0, 1.0),
                       seed: int = 0) -> PointSet:
    """n i.i.d. uniform points in [0, box_side)^2, weights uniform in range.

    A weight range lower bound of 0 is mapped to the half-open interval
    (0, hi] so generated weights stay strictly positive.
    """
    if n < 0:
        raise BadRange(f"n must be >= 0, got {n}")
    if box_side <= 0:
        raise BadRange(f"box_side must be > 0, got {box_side}")
    lo, hi = weight_range
    if lo < 0 or hi < lo or hi <= 0:
        raise BadRange(f"invalid weight range [{lo}, {hi}]")
    draws = _stream_doubles(seed, 3 * n)
    xs = draws[0::3] * box_side
    ys = draws[1::3] * box_side
    if hi == lo:
        ws = np.full(n, float(hi))
    else:
        ws = lo + draws[2::3] * (hi - lo)
        if lo == 0.0:
            ws = hi - draws[2::3] * (hi - lo)  # (0, hi], avoids zero weights
    return PointSet(xs, ys, ws)


def gen_clustered_points(clusters: int, per_cluster: int, cluster_radius: float,
                         box_side: float, seed: int = 0) -> PointSet:
    """Clusters of nearby points with centers separated by > 2*(radius + 2)."""
    if clusters < 0 or per_cluster < 0:
        raise BadRange("clusters and per_cluster must be >= 0")
    if cluster_radius < 0 or box_side <= 0:
        raise BadRange("cluster_radius must be >= 0 and box_side > 0")
    if clusters == 0 or per_cluster == 0:
        return PointSet([], [], [])
    sep = 2.0 * (cluster_radius + 2.0)
    rng = SplitMix64(seed)
    centers: list[tuple[float, float]] = []
    attempts = 0
    max_attempts = 1000 * clusters
    while len(centers) < clusters:
        attempts += 1
        if attempts > max_attempts:
            raise BoxTooSmall(
                f"cannot place {clusters} cluster centers with separation {sep} "
                f"in a box of side {box_side}"
            )
        cx = rng.next_double() * box_side
        cy = rng.next_double() * box_side
        if all((cx - ox) ** 2 + (cy - oy) ** 2 > sep * sep for ox, oy in centers):
            centers.append((cx, cy))
    xs, ys, ws = [], [], []
    for cx, cy in centers:
        for _ in range(per_cluster):
            ang = rng.next_double() * 2.0 * math.pi
            rad = cluster_radius * math.sqrt(rng.next_double())
            xs.append(cx + rad * math.cos(ang))
            ys.append(cy + rad * math.sin(ang))
            ws.append(1.0 - rng.next_double())  # (0, 1]
    return PointSet(xs, ys, ws)


def gen_uniform_rects(n: int, box_side: float, lam: float, seed: int = 0) -> RectSet:
    """n rectangles: centers uniform in the box, sides uniform in [1, lam]."""
    if n < 0:
        raise BadRange(f"n must be >= 0, got {n}")
    if box_side <= 0:
        raise BadRange(f"box_side must be > 0, got {box_side}")
    if lam < 1.0:
        raise LambdaTooSmall(f"lambda must be >= 1, got {lam}")
    draws = _stream_doubles(seed, 5 * n)
    cxs = draws[0::5] * box_side
    cys = draws[1::5] * box_side
    widths = 1.0 + draws[2::5] * (lam - 1.0)
    heights = 1.0 + draws[3::5] * (lam - 1.0)
    ws = 1.0 - draws[4::5]  # (0, 1]
    return RectSet(cxs, cys, widths, heights, ws)


@dataclass
class InstanceFile:
    """A parsed instance: kind 'points' or 'rects', records, optional lambda.

    For point instances, ``targets`` lists the ordinals flagged as members of
    the target subset (the optional trailing 0/1 column; default member).
    """

    kind: str
    points: PointSet | None = None
    rects: RectSet | None = None
    targets: list[int] | None = None
    lam: float | None = None


def _parse_float(tok: str, lineno: int, what: str) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(lineno, f"bad {what}: {tok!r}") from None
    if not math.isfinite(v):
        raise ParseError(lineno, f"{what} must be finite, got {tok!r}")
    return v


def read_instance(path) -> InstanceFile:
    """Parse a point or rect instance file; malformed lines report 1-based numbers."""
    lam = None
    rows: list[tuple[int, list[str]]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("lambda="):
                    lam = _parse_float(body[len("lambda="):], lineno, "lambda")
                continue
            if not line:
                continue
            rows.append((lineno, line.split()))
    if not rows:
        return InstanceFile("points", points=PointSet([], [], []), targets=[])
    width = len(rows[0][1])
    if width in (3, 4):
        kind = "points"
    elif width == 5:
        kind = "rects"
    else:
        raise ParseError(rows[0][0], f"expected 3-5 fields, got {width}")
    if kind == "points":
        xs, ys, ws, targets = [], [], [], []
        for lineno, toks in rows:
            if len(toks) not in (3, 4):
                raise ParseError(lineno, f"expected 3 or 4 fields, got {len(toks)}")
            x = _parse_float(toks[0], lineno, "x")
            y = _parse_float(toks[1], lineno, "y")
            w = _parse_float(toks[2], lineno, "w")
            if w <= 0:
                raise InvalidWeight(lineno, f"weight must be > 0, got {w}")
            if abs(x) >= MAX_ABS_COORD or abs(y) >= MAX_ABS_COORD:
                raise ParseError(lineno, "coordinate magnitude too large")
            t = 1
            if len(toks) == 4:
                if toks[3] not in ("0", "1"):
                    raise ParseError(lineno, f"target flag must be 0 or 1, got {toks[3]!r}")
                t = int(toks[3])
            if t:
                targets.append(len(xs))
            xs.append(x)
            ys.append(y)
            ws.append(w)
        return InstanceFile("points", points=PointSet(xs, ys, ws), targets=targets)
    cxs, cys, widths, heights, ws = [], [], [], [], []
    for lineno, toks in rows:
        if len(toks) != 5:
            raise ParseError(lineno, f"expected 5 fields, got {len(toks)}")
        cx = _parse_float(toks[0], lineno, "cx")
        cy = _parse_float(toks[1], lineno, "cy")
        wd = _parse_float(toks[2], lineno, "width")
        ht = _parse_float(toks[3], lineno, "height")
        w = _parse_float(toks[4], lineno, "w")
        if w <= 0:
            raise InvalidWeight(lineno, f"weight must be > 0, got {w}")
        if wd < 1.0 or ht < 1.0:
            raise SideOutOfRange(f"sides must be >= 1, got {wd} x {ht}", line=lineno)
        if lam is not None and (wd > lam or ht > lam):
            raise SideOutOfRange(f"sides must be <= lambda={lam}, got {wd} x {ht}", line=lineno)
        if abs(cx) >= MAX_ABS_COORD or abs(cy) >= MAX_ABS_COORD:
            raise ParseError(lineno, "coordinate magnitude too large")
        cxs.append(cx)
        cys.append(cy)
        widths.append(wd)
        heights.append(ht)
        ws.append(w)
    return InstanceFile("rects", rects=RectSet(cxs, cys, widths, heights, ws), lam=lam)


def write_instance(path, inst: InstanceFile) -> None:
    """Serialize with 17 significant digits so read(write(x)) round-trips."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if inst.kind == "points":
            ps = inst.points
            targets = set(inst.targets) if inst.targets is not None else set(range(len(ps)))
            all_targets = len(targets) == len(ps)
            for i in range(len(ps)):
                row = f"{ps.xs[i]:.17g} {ps.ys[i]:.17g} {ps.ws[i]:.17g}"
                if not all_targets:
                    row += f" {1 if i in targets else 0}"
                fh.write(row + "\n")
        elif inst.kind == "rects":
            if inst.lam is not None:
                fh.write(f"# lambda={inst.lam:.17g}\n")
            rs = inst.rects
            for i in range(len(rs)):
                fh.write(
                    f"{rs.cxs[i]:.17g} {rs.cys[i]:.17g} {rs.widths[i]:.17g} "
                    f"{rs.heights[i]:.17g} {rs.ws[i]:.17g}\n"
                )
        else:
            raise ValueError(f"unknown instance kind {inst.kind!r}")
