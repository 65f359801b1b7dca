"""Point-set generators: random, parabola and the extremal constructions.

The extremal sets are built by exact integer placement.  Correctness of
the block layouts is not taken on faith: the test suite checks every
output against the brute-force and DP oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .geometry import FAST_COORD_LIMIT, PointSet, collinear_triples_fast

PRNG_NAME = "numpy.random.PCG64"
GENERATOR_VERSION = "1"
MAX_RESAMPLES = 10_000


@dataclass(frozen=True)
class GeneratorSpec:
    """Everything needed to regenerate a point set bit-for-bit."""

    kind: str  # "random" | "parabola" | "cupcap-extremal" | "es-lower"
    n: int = 0
    k: int = 0
    l: int = 0
    seed: int = 0
    coord_range: int = FAST_COORD_LIMIT
    extra: dict = field(default_factory=dict, compare=False)

    def metadata(self) -> dict:
        meta = {"kind": self.kind, "generator_version": GENERATOR_VERSION}
        if self.kind == "random":
            meta.update(n=self.n, seed=self.seed, range=self.coord_range, prng=PRNG_NAME,
                        numpy_version=np.__version__)
        elif self.kind in ("parabola", "es-lower"):
            meta.update(n=self.n)
        elif self.kind == "cupcap-extremal":
            meta.update(k=self.k, l=self.l)
        return meta


def generate(spec: GeneratorSpec) -> PointSet:
    if spec.kind == "random":
        return random_general_position(spec.n, spec.coord_range, spec.seed)
    if spec.kind == "parabola":
        return parabola_points(spec.n)
    if spec.kind == "cupcap-extremal":
        return extremal_cupcap_set(spec.k, spec.l)
    if spec.kind == "es-lower":
        return es_lower_bound_set(spec.n)
    raise ValueError(f"unknown generator kind {spec.kind!r}")


def _completes_collinear(xs: np.ndarray, ys: np.ndarray, count: int, x: int, y: int) -> bool:
    """Would (x, y) duplicate a point or lie on a line through two of the first ``count`` points?"""
    if count == 0:
        return False
    dx = xs[:count] - x
    dy = ys[:count] - y
    if np.any((dx == 0) & (dy == 0)):
        return True
    if count < 2:
        return False
    flip = (dx < 0) | ((dx == 0) & (dy < 0))
    dx = np.where(flip, -dx, dx)
    dy = np.where(flip, -dy, dy)
    g = np.gcd(dx, dy)
    key = (dx // g) * (1 << 24) + (dy // g + (1 << 23))
    return np.unique(key).size != count


def random_general_position(N: int, coord_range: int = FAST_COORD_LIMIT, seed: int = 0,
                            id: str | None = None) -> PointSet:
    """N integer points uniform in [-range, range]^2, no three collinear.

    All N points are drawn at once; a point that duplicates an earlier one or
    is the last of a collinear triple is redrawn until it fits.  The stream
    of draws depends only on ``seed``.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if coord_range < 1:
        raise ValueError("coord_range must be positive")
    if coord_range > FAST_COORD_LIMIT:
        return _random_general_position_slow(N, coord_range, seed, id)
    rng = np.random.Generator(np.random.PCG64(seed))
    xy = rng.integers(-coord_range, coord_range, size=(N, 2), endpoint=True)
    # drop later duplicates and one point (the last) of every collinear triple,
    # then redraw those slots one at a time against the accepted points
    packed = (xy[:, 0] + coord_range) * (2 * coord_range + 1) + (xy[:, 1] + coord_range)
    _, first = np.unique(packed, return_index=True)
    bad = set(range(N)) - set(first.tolist())
    kept = np.array(sorted(set(range(N)) - bad), dtype=np.int64)
    for triple in collinear_triples_fast(xy[kept]):
        ids = [int(kept[t]) for t in triple]
        if not bad.intersection(ids):
            bad.add(max(ids))
    failures = 0
    good = np.ones(N, dtype=bool)
    good[list(bad)] = False
    for i in sorted(bad):
        acc = xy[good]
        xs, ys = acc[:, 0].copy(), acc[:, 1].copy()
        while True:
            x, y = (int(v) for v in rng.integers(-coord_range, coord_range, size=2, endpoint=True))
            if not _completes_collinear(xs, ys, len(xs), x, y):
                break
            failures += 1
            if failures > MAX_RESAMPLES:
                raise RuntimeError(f"could not place {N} points in general position within range {coord_range}")
        xy[i] = (x, y)
        good[i] = True
    xs, ys = xy[:, 0], xy[:, 1]
    name = id if id is not None else f"random-n{N}-r{coord_range}-s{seed}"
    return PointSet(zip(xs.tolist(), ys.tolist()), id=name, check=False)


def _random_general_position_slow(N, rng_range, seed, id):
    import random as _random

    rng = _random.Random(seed)
    pts: list[tuple[int, int]] = []
    failures = 0
    while len(pts) < N:
        cand = (rng.randint(-rng_range, rng_range), rng.randint(-rng_range, rng_range))
        ok = cand not in pts
        if ok:
            seen = set()
            for p in pts:
                dx, dy = p[0] - cand[0], p[1] - cand[1]
                if dx < 0 or (dx == 0 and dy < 0):
                    dx, dy = -dx, -dy
                g = math.gcd(dx, dy)
                key = (dx // g, dy // g)
                if key in seen:
                    ok = False
                    break
                seen.add(key)
        if ok:
            pts.append(cand)
        else:
            failures += 1
            if failures > MAX_RESAMPLES:
                raise RuntimeError(f"could not place {N} points in general position within range {rng_range}")
    name = id if id is not None else f"random-n{N}-r{rng_range}-s{seed}"
    return PointSet(pts, id=name, check=False)


def parabola_points(N: int) -> PointSet:
    """(i, i^2) for i = 1..N: the canonical all-cup set."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return PointSet([(i, i * i) for i in range(1, N + 1)], id=f"parabola-{N}", check=False)


def _max_abs_slope(pts) -> Fraction:
    best = Fraction(0)
    for i, (x1, y1) in enumerate(pts):
        for x2, y2 in pts[i + 1:]:
            s = abs(Fraction(y2 - y1, x2 - x1))
            if s > best:
                best = s
    return best


@lru_cache(maxsize=None)
def _delta(k: int, l: int) -> tuple[tuple[int, int], ...]:
    """Points with no k-cup and no l-cap, min corner at the origin, distinct x."""
    if k <= 2 or l <= 2:
        return ((0, 0),)
    left = list(_delta(k - 1, l))
    right = list(_delta(k, l - 1))
    # every slope between the halves must exceed every slope inside either half
    S = max(_max_abs_slope(left), _max_abs_slope(right))
    left_w = max(x for x, _ in left)
    left_h = max(y for _, y in left)
    right_w = max(x for x, _ in right)
    dx = left_w + 1
    # need (dy - left_h) > S * (dx + right_w), the flattest left->right slope
    need = S * (dx + right_w) + left_h
    dy = math.floor(need) + 1
    pts = left + [(x + dx, y + dy) for x, y in right]
    return tuple(pts)


def extremal_cupcap_set(k: int, l: int) -> PointSet:
    """C(k+l-4, k-2) points containing no k-cup and no l-cap.

    Recursive layout: the (k-1, l) set on the lower left and the (k, l-1)
    set on the upper right, lifted so that every connecting slope is steeper
    than every slope inside either part.
    """
    if k < 2 or l < 2:
        raise ValueError("k and l must be at least 2")
    if k + l > 14:
        raise ValueError("k + l must be at most 14")
    pts = _delta(k, l)
    if k == 2 or l == 2:
        # C(k+l-4, k-2) = 1 point with no 2-cup/2-cap
        pts = pts[:1]
    return PointSet(pts, id=f"cupcap-extremal-{k}-{l}", check=False)


@dataclass(frozen=True)
class _Box:
    x0: int
    y0: int
    w: int
    h: int

    def corners(self):
        return [(self.x0, self.y0), (self.x0 + self.w, self.y0),
                (self.x0, self.y0 + self.h), (self.x0 + self.w, self.y0 + self.h)]


def _line_height(a, b, x) -> Fraction:
    return a[1] + Fraction(b[1] - a[1], b[0] - a[0]) * (x - a[0])


def _layout_ok(boxes: list[_Box], max_slope: Fraction) -> bool:
    # (1) every slope between different blocks exceeds every in-block |slope|
    for i, bi in enumerate(boxes):
        for bj in boxes[i + 1:]:
            for a in bi.corners():
                for b in bj.corners():
                    if Fraction(b[1] - a[1], b[0] - a[0]) <= max_slope:
                        return False
    # (2) each block lies strictly below every line joining an earlier and a later block
    for j in range(1, len(boxes) - 1):
        bj = boxes[j]
        top = bj.y0 + bj.h
        for i in range(j):
            for l in range(j + 1, len(boxes)):
                for a in boxes[i].corners():
                    for b in boxes[l].corners():
                        for x in (bj.x0, bj.x0 + bj.w):
                            if _line_height(a, b, x) <= top:
                                return False
    return True


# Block layout: block i is translated by (i * gap, 2**e * i**2).  The gap
# starts at GAP_FACTOR * n * (widest block + 1) so a block's width is small
# against the spacing; e starts at the bit length of 2 * (S * gap + H) and
# grows until the exact layout checks pass, doubling the gap every
# MAX_SCALE_STEPS failed steps.
GAP_FACTOR = 4
MAX_SCALE_STEPS = 8


def es_lower_bound_set(n: int) -> PointSet:
    """2^(n-2) points whose largest convex subset has n-1 points.

    Blocks are the extremal sets with no (i+2)-cup and no (n-i)-cap,
    i = 0..n-2, placed along a steep convex (cup-shaped) curve so that a
    convex polygon can use a cup from its first block, a cap from its last
    block and at most one point from any block in between.
    """
    if not 3 <= n <= 12:
        raise ValueError("n must be between 3 and 12")
    blocks = [list(_delta(i + 2, n - i)) for i in range(n - 1)]
    widths = [max(x for x, _ in b) for b in blocks]
    heights = [max(y for _, y in b) for b in blocks]
    max_slope = max(_max_abs_slope(b) for b in blocks)
    gap = GAP_FACTOR * n * (max(widths) + 1)
    while True:
        e = math.ceil(2 * (max_slope * gap + max(heights))).bit_length()
        for _ in range(MAX_SCALE_STEPS):
            boxes = [_Box(i * gap, (1 << e) * i * i, widths[i], heights[i]) for i in range(n - 1)]
            if _layout_ok(boxes, max_slope):
                break
            e += 1
        else:
            gap *= 2
            continue
        break
    pts = []
    for box, block in zip(boxes, blocks):
        pts.extend((box.x0 + x, box.y0 + y) for x, y in block)
    return PointSet(pts, id=f"es-lower-{n}", check=False)
