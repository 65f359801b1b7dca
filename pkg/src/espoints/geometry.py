"""Exact planar predicates on integer points.

Every predicate here evaluates the sign of an integer determinant exactly.
Scalar calls use Python integers (arbitrary precision).  Batch calls go
through numpy: ``int64`` when all coordinates satisfy ``|c| <= FAST_COORD_LIMIT``
(so every 2x2 determinant of differences fits comfortably in 63 bits) and
``object`` arrays of Python integers otherwise.
"""

from __future__ import annotations

import enum
import itertools
import math
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateInput

FAST_COORD_LIMIT = 1 << 20


class Point(NamedTuple):
    x: int
    y: int


class Orientation(enum.IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


def _cross(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def orientation(p, q, r) -> Orientation:
    """Sign of the turn p -> q -> r (CCW is a left turn)."""
    d = _cross(p[0], p[1], q[0], q[1], r[0], r[1])
    if d > 0:
        return Orientation.CCW
    if d < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def orient_sign(p, q, r) -> int:
    """Same as :func:`orientation` but returns a plain int in {-1, 0, 1}."""
    d = _cross(p[0], p[1], q[0], q[1], r[0], r[1])
    return (d > 0) - (d < 0)


def orient_batch(ax, ay, bx, by, cx, cy) -> np.ndarray:
    """Broadcast orientation signs as an ``int8`` array.

    Inputs may be int64 or object arrays; callers pick the dtype through
    :meth:`PointSet.xy` so that int64 is only used inside the exact range.
    """
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    if isinstance(d, np.ndarray) and d.dtype == object:
        return ((d > 0).astype(np.int8) - (d < 0).astype(np.int8))
    return np.sign(d).astype(np.int8)


def fits_fast_path(coords: Iterable[int]) -> bool:
    coords = list(coords)
    return not coords or (-FAST_COORD_LIMIT <= min(coords) and max(coords) <= FAST_COORD_LIMIT)


class PointSet:
    """An ordered, immutable list of distinct integer points.

    Construction rejects duplicates always and collinear triples when
    ``check=True``.  Generators that already guarantee general position pass
    ``check=False`` to skip the quadratic scan.
    """

    def __init__(self, points: Iterable[Sequence[int]], id: str = "", check: bool = True):
        pts = []
        for p in points:
            x, y = p
            if isinstance(x, (bool, float)) or isinstance(y, (bool, float)):
                raise TypeError(f"coordinates must be integers, got {p!r}")
            pts.append(Point(int(x), int(y)))
        self.points: tuple[Point, ...] = tuple(pts)
        self.id = id
        if len(set(self.points)) != len(self.points):
            seen = {}
            for i, p in enumerate(self.points):
                if p in seen:
                    raise DegenerateInput(f"duplicate point {tuple(p)} at indices {seen[p]} and {i}")
                seen[p] = i
        if check:
            triple = find_collinear_triple(self)
            if triple is not None:
                raise DegenerateInput(f"collinear triple at indices {triple}", triple=triple)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"PointSet(n={len(self.points)}, id={self.id!r})"

    @cached_property
    def fast(self) -> bool:
        """True when int64 batch arithmetic is exact for this set."""
        return fits_fast_path(c for p in self.points for c in p)

    @cached_property
    def xy(self) -> np.ndarray:
        """(N, 2) coordinate array, int64 on the fast path, object otherwise."""
        if self.fast:
            return np.array(self.points, dtype=np.int64).reshape(len(self.points), 2)
        arr = np.empty((len(self.points), 2), dtype=object)
        for i, (x, y) in enumerate(self.points):
            arr[i, 0] = x
            arr[i, 1] = y
        return arr

    @classmethod
    def _trusted(cls, points: tuple, id: str) -> "PointSet":
        # internal: points already validated (subsets, rotated copies)
        obj = cls.__new__(cls)
        obj.points = points
        obj.id = id
        return obj

    def subset(self, indices: Sequence[int], id: str | None = None) -> "PointSet":
        return PointSet._trusted(tuple(self.points[i] for i in indices), self.id if id is None else id)

    def reflected(self) -> "PointSet":
        """Image under (x, y) -> (-x, -y); cached.

        The half turn swaps cups and caps and exactly reverses lex order, so
        ties in x keep their meaning (y -> -y alone would not).
        """
        mirror = self.__dict__.get("_mirror")
        if mirror is None:
            mirror = PointSet._trusted(tuple(Point(-x, -y) for x, y in self.points), self.id)
            mirror.__dict__["_mirror"] = self
            self.__dict__["_mirror"] = mirror
        return mirror


def as_pointset(S) -> PointSet:
    if isinstance(S, PointSet):
        return S
    return PointSet(S, check=False)


def _normalized_directions_fast(xy: np.ndarray, a: int) -> np.ndarray:
    d = xy[a + 1:] - xy[a]
    dx, dy = d[:, 0].copy(), d[:, 1].copy()
    flip = (dx < 0) | ((dx == 0) & (dy < 0))
    dx[flip] = -dx[flip]
    dy[flip] = -dy[flip]
    g = np.gcd(dx, dy)
    dx //= g
    dy //= g
    return dx * (1 << 24) + (dy + (1 << 23))


_SCAN_BLOCK = 128


def collinear_triples_fast(xy: np.ndarray, block: int = _SCAN_BLOCK):
    """Yield collinear triples (a, j, k), a < j < k, of distinct int64 points.

    Slopes from each anchor to the later points are sorted as floats in
    blocks of anchors; exactly equal slopes give exactly equal quotients, so
    only rows with a repeated float are re-examined with exact integer keys.
    Every collinear triple is reported exactly once, by increasing anchor.
    """
    n = len(xy)
    if n < 3:
        return
    fx = xy[:, 0].astype(np.float64)
    fy = xy[:, 1].astype(np.float64)
    cols = np.arange(n)
    big = np.finfo(np.float64).max
    for lo in range(0, n - 2, block):
        rows = np.arange(lo, min(n - 2, lo + block))
        with np.errstate(divide="ignore", invalid="ignore"):
            key = (fy[None, :] - fy[rows, None]) / (fx[None, :] - fx[rows, None])
        key[~np.isfinite(key)] = big
        key[cols[None, :] <= rows[:, None]] = np.inf
        sk = np.sort(key, axis=1)
        suspect = ((sk[:, 1:] == sk[:, :-1]) & (sk[:, 1:] < np.inf)).any(axis=1)
        for a in rows[suspect].tolist():
            keys = _normalized_directions_fast(xy, a)
            order = np.argsort(keys, kind="stable")
            sk_exact = keys[order]
            _, start, count = np.unique(sk_exact, return_index=True, return_counts=True)
            for s0, c in zip(start[count > 1].tolist(), count[count > 1].tolist()):
                group = sorted(int(order[h]) + a + 1 for h in range(s0, s0 + c))
                for j, k in itertools.combinations(group, 2):
                    yield (a, j, k)


def find_collinear_triple(S) -> tuple[int, int, int] | None:
    """Return indices (i, j, k), i < j < k, of some collinear triple, or None."""
    S = as_pointset(S)
    pts = S.points
    n = len(pts)
    if n < 3:
        return None
    if n <= 24:
        for i, j, k in itertools.combinations(range(n), 3):
            if _cross(*pts[i], *pts[j], *pts[k]) == 0:
                return (i, j, k)
        return None
    if S.fast:
        return next(collinear_triples_fast(S.xy), None)
    for a in range(n - 2):
        ax, ay = pts[a]
        seen = {}
        for b in range(a + 1, n):
            dx, dy = pts[b][0] - ax, pts[b][1] - ay
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            g = math.gcd(dx, dy)
            key = (dx // g, dy // g)
            if key in seen:
                return (a, seen[key], b)
            seen[key] = b
    return None


def is_general_position(S) -> bool:
    """True iff all points are distinct and no three are collinear."""
    pts = S.points if isinstance(S, PointSet) else [Point(*p) for p in S]
    if len(set(pts)) != len(pts):
        return False
    return find_collinear_triple(S) is None


def convex_hull(S, indices: Sequence[int] | None = None) -> list[int]:
    """Hull vertex indices in CCW order, starting at the lexicographic minimum.

    Uses the monotone chain; points on a hull edge are dropped.  When
    ``indices`` is given only those points are considered and the returned
    indices refer to ``S``.
    """
    pts = S.points if isinstance(S, PointSet) else [Point(*p) for p in S]
    idx = range(len(pts)) if indices is None else indices
    order = sorted(idx, key=lambda i: pts[i])
    if len(order) == 0:
        raise ValueError("convex hull of an empty set")
    if len(order) <= 2:
        return list(order)

    def half(seq):
        chain: list[int] = []
        for i in seq:
            while len(chain) >= 2 and _cross(*pts[chain[-2]], *pts[chain[-1]], *pts[i]) <= 0:
                chain.pop()
            chain.append(i)
        return chain

    lower = half(order)
    upper = half(reversed(order))
    return lower[:-1] + upper[:-1]


def four_in_convex_position(a, b, c, d) -> bool:
    """Four points (no three collinear) are convex iff none lies in the others' triangle."""
    quad = (a, b, c, d)
    for i in range(4):
        others = [quad[j] for j in range(4) if j != i]
        if _strictly_inside_triangle(quad[i], *others):
            return False
    return True


def _strictly_inside_triangle(q, a, b, c) -> bool:
    s1 = orient_sign(a, b, q)
    s2 = orient_sign(b, c, q)
    s3 = orient_sign(c, a, q)
    return s1 == s2 == s3 != 0


def convex_position_by_quadruples(S, subset: Sequence[int]) -> bool:
    """Convex-position test that only looks at 4-subsets."""
    pts = S.points if isinstance(S, PointSet) else [Point(*p) for p in S]
    return all(
        four_in_convex_position(pts[a], pts[b], pts[c], pts[d])
        for a, b, c, d in itertools.combinations(subset, 4)
    )


QUADRUPLE_CROSS_CHECK_MAX = 12


def is_convex_position(S, subset: Sequence[int] | None = None, cross_check: bool = True) -> bool:
    """True iff every selected point is a vertex of the selection's hull.

    For selections of at most 12 points the 4-subset characterisation is
    evaluated as well and the two answers must agree.
    """
    pts = S.points if isinstance(S, PointSet) else [Point(*p) for p in S]
    subset = list(range(len(pts))) if subset is None else list(subset)
    if len(set(subset)) != len(subset):
        raise ValueError(f"duplicate indices in subset {subset}")
    for i in subset:
        if not 0 <= i < len(pts):
            raise IndexError(f"index {i} out of range for {len(pts)} points")
    if len(subset) <= 3:
        return True
    hull_ok = len(convex_hull(pts, subset)) == len(subset)
    if cross_check and len(subset) <= QUADRUPLE_CROSS_CHECK_MAX:
        quad_ok = convex_position_by_quadruples(pts, subset)
        if quad_ok != hull_ok:
            raise AssertionError(
                f"hull and quadruple convexity tests disagree on {subset} "
                "(input is probably not in general position)"
            )
    return hull_ok


def point_in_convex_polygon(q, polygon: Sequence, open: bool = False) -> bool:
    """Membership of q in a convex polygon given CCW.

    ``open=True`` tests the strict interior, otherwise the closed polygon.
    Polygons with fewer than three vertices are treated as a point or a
    segment (empty interior).
    """
    m = len(polygon)
    if m == 0:
        return False
    if m == 1:
        return not open and tuple(q) == tuple(polygon[0])
    if m == 2:
        if open:
            return False
        a, b = polygon
        if orient_sign(a, b, q) != 0:
            return False
        return min(a[0], b[0]) <= q[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= q[1] <= max(a[1], b[1])
    for i in range(m):
        s = orient_sign(polygon[i], polygon[(i + 1) % m], q)
        if s < 0 or (open and s == 0):
            return False
    return True


def ccw_triangle(a, b, c) -> tuple:
    """Return the three vertices reordered counter-clockwise."""
    if orient_sign(a, b, c) < 0:
        return (a, c, b)
    return (a, b, c)


def lex_order(S) -> list[int]:
    """Indices sorted by (x, y); the tie rule acts as an infinitesimal shear."""
    pts = S.points if isinstance(S, PointSet) else [Point(*p) for p in S]
    return sorted(range(len(pts)), key=lambda i: pts[i])
