"""Ground truth for convex position: exact DP and exhaustive enumeration.

The DP fixes the lowest vertex ``p`` of the polygon, sorts the points above
it by angle around ``p`` and grows CCW chains edge by edge; a chain closes
when its last turn back to ``p`` is a left turn.  Orientation signs come
from one precomputed N x N x N table, so the oracle is meant for the few
hundred points the test matrix uses.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Sequence

import numpy as np

from .errors import NotFound
from .geometry import as_pointset, convex_hull, is_convex_position, orient_batch

DEFAULT_EXHAUSTIVE_MAX_N = 15
ORACLE_MAX_N = 600


def exhaustive_max_n() -> int:
    """Cutoff for exhaustive cross-checks; overridable via ESPOINTS_MAX_ORACLE_N."""
    value = os.environ.get("ESPOINTS_MAX_ORACLE_N")
    return int(value) if value else DEFAULT_EXHAUSTIVE_MAX_N


@dataclass
class ConvexWitness:
    indices: tuple[int, ...]
    trace: list[dict] = field(default_factory=list)
    size: int | None = None

    def __post_init__(self):
        self.indices = tuple(int(i) for i in self.indices)
        if self.size is None:
            self.size = len(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def to_dict(self) -> dict:
        return {"indices": list(self.indices), "size": self.size, "trace": self.trace}


def verify_witness(S, w: ConvexWitness) -> bool:
    """Re-check a witness from scratch; the trace is ignored."""
    try:
        S = as_pointset(S)
        idx = list(w.indices)
        if w.size != len(idx) or len(set(idx)) != len(idx):
            return False
        if any(not isinstance(i, int) or not 0 <= i < len(S) for i in idx):
            return False
        return is_convex_position(S, idx)
    except (ValueError, IndexError, TypeError, AssertionError):
        return False


def orientation_table(S) -> np.ndarray:
    """int8 array O with O[a, b, c] = orientation sign of (a, b, c)."""
    S = as_pointset(S)
    n = len(S)
    if n > ORACLE_MAX_N:
        raise ValueError(f"orientation table limited to {ORACLE_MAX_N} points, got {n}")
    xy = S.xy
    xs, ys = xy[:, 0], xy[:, 1]
    table = np.zeros((n, n, n), dtype=np.int8)
    for a in range(n):
        table[a] = orient_batch(xs[a], ys[a], xs[:, None], ys[:, None], xs[None, :], ys[None, :])
    return table


def _anchor_order(S, O, p):
    pts = S.points
    above = [q for q in range(len(pts)) if (pts[q][1], pts[q][0]) > (pts[p][1], pts[p][0])]
    return sorted(above, key=cmp_to_key(lambda a, b: -int(O[p, a, b])))


def _search(S, target: int | None):
    """Best polygon over all anchors; stops early once ``target`` vertices are reached."""
    S = as_pointset(S)
    n = len(S)
    if n <= 2:
        return list(range(n))
    O = orientation_table(S)
    best = [0, 1, 2]  # any triangle
    if target is not None and target <= 3:
        return best
    for p in range(n):
        c = np.asarray(_anchor_order(S, O, p), dtype=np.int64)
        m = len(c)
        if m + 1 <= len(best):
            continue
        D = np.full((m, m), 3, dtype=np.int64)
        pred = np.full((m, m), -1, dtype=np.int64)
        for v in range(m):
            if v > 0 and v < m - 1:
                valid = O[np.ix_(c[:v], [c[v]], c[v + 1:])][:, 0, :] > 0
                vals = np.where(valid, D[:v, v][:, None], 0)
                arg = vals.argmax(axis=0)
                top = vals[arg, np.arange(m - v - 1)]
                grow = top + 1 > 3
                D[v, v + 1:] = np.where(grow, top + 1, 3)
                pred[v, v + 1:] = np.where(grow, arg, -1)
            if v < m - 1:
                closes = O[c[v], c[v + 1:], p] > 0
                cand = np.where(closes, D[v, v + 1:], 0)
                w_off = int(cand.argmax())
                size = int(cand[w_off])
                if size > len(best):
                    w = v + 1 + w_off
                    chain = [w, v]
                    a, b = v, w
                    while pred[a, b] >= 0:
                        u = int(pred[a, b])
                        chain.append(u)
                        a, b = u, a
                    best = [p] + [int(c[i]) for i in reversed(chain)]
                    if target is not None and len(best) >= target:
                        return best
    return best


def largest_convex_subset(S) -> ConvexWitness:
    """A maximum-cardinality subset in convex position (exact DP)."""
    poly = _search(S, None)
    return ConvexWitness(tuple(poly), trace=[{"rule": "oracle", "method": "dp"}])


def contains_convex_ngon(S, n: int) -> ConvexWitness:
    """n points in convex position, or :class:`NotFound` if none exist."""
    if n < 3:
        raise ValueError("n must be at least 3")
    poly = _search(S, n)
    if len(poly) < n:
        raise NotFound(f"no {n} points in convex position (largest is {len(poly)})")
    return ConvexWitness(tuple(poly[:n]), trace=[{"rule": "oracle", "method": "dp", "target": n}])


def largest_convex_subset_exhaustive(S) -> ConvexWitness:
    """Brute force over subsets, largest first, using the hull test."""
    S = as_pointset(S)
    n = len(S)
    for r in range(n, 0, -1):
        for combo in itertools.combinations(range(n), r):
            if r <= 3 or len(convex_hull(S, combo)) == r:
                return ConvexWitness(combo, trace=[{"rule": "oracle", "method": "exhaustive"}])
    return ConvexWitness((), trace=[{"rule": "oracle", "method": "exhaustive"}])


def has_convex_subset_exhaustive(S, r: int, subsets: Sequence[Sequence[int]] | None = None) -> bool:
    S = as_pointset(S)
    combos = itertools.combinations(range(len(S)), r) if subsets is None else subsets
    return any(len(convex_hull(S, c)) == r for c in combos)
