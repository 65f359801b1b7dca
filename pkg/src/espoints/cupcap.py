"""Cups, caps and transitive 2-colorings.

A *cup* is an x-monotone chain whose consecutive triples all turn left
(CCW); a *cap* turns right (CW) throughout.  Points sharing an x-coordinate
are ordered by y, which is the same as applying an infinitesimal shear.
Any two points form both a cup and a cap.

The geometric search (:class:`CupCapTable`) is the classical dynamic
program over ordered pairs: ``cup[i, j]`` is the length of the longest cup
whose last edge is ``i -> j``.  Around each middle point the incoming and
outgoing edges share one slope order, so each transition is a prefix (cup)
or suffix (cap) maximum and the whole table costs O(N^2 log N).
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Sequence

import numpy as np

from .errors import ContractViolation, DegenerateInput, NotFound
from .geometry import PointSet, as_pointset, lex_order, orient_sign


class Kind(enum.Enum):
    CUP = "cup"
    CAP = "cap"


@dataclass(frozen=True)
class CupCap:
    kind: Kind
    indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class CupCapThreshold:
    k: int
    l: int
    value: int


def _check_x_sorted(pts, indices):
    for a, b in zip(indices, indices[1:]):
        if not pts[a] < pts[b]:
            raise ValueError(f"indices {list(indices)} are not sorted by (x, y)")


def _chain_turns(S, indices: Sequence[int], sign: int) -> bool:
    pts = as_pointset(S).points
    _check_x_sorted(pts, indices)
    return all(
        orient_sign(pts[a], pts[b], pts[c]) == sign
        for a, b, c in zip(indices, indices[1:], indices[2:])
    )


def is_cup(S, indices: Sequence[int]) -> bool:
    return _chain_turns(S, indices, 1)


def is_cap(S, indices: Sequence[int]) -> bool:
    return _chain_turns(S, indices, -1)


def cupcap_threshold(k: int, l: int) -> CupCapThreshold:
    """Smallest N forcing a k-cup or an l-cap: C(k+l-4, k-2) + 1."""
    if k < 2 or l < 2:
        raise ValueError("k and l must be at least 2")
    return CupCapThreshold(k, l, math.comb(k + l - 4, k - 2) + 1)


def _slope_cmp(a, b):
    # a, b are (dx, dy) with dx > 0 or (dx == 0 and dy > 0)
    lhs = a[1] * b[0]
    rhs = b[1] * a[0]
    return (lhs > rhs) - (lhs < rhs)


class CupCapTable:
    """Longest-cup and longest-cap tables for one point set.

    Tables are indexed by lex rank (position in :func:`lex_order`).  Each
    entry packs ``length * W + (predecessor_rank + 1)`` with ``W = N + 1``
    so the prefix maximum carries its argmax along.
    """

    def __init__(self, S):
        S = as_pointset(S)
        self.S = S
        self.order = lex_order(S)
        n = len(S)
        self.n = n
        self.W = n + 1
        dtype = np.int32 if n * n < 2**31 - 1 else np.int64
        self.cup = np.zeros((n, n), dtype=dtype)
        self.cap = np.zeros((n, n), dtype=dtype)
        if n >= 2:
            self._fill()

    def _sorted_pts(self):
        pts = self.S.points
        return [pts[i] for i in self.order]

    _BLOCK = 128

    def _fast_orders(self):
        """Slope orders for a block of ranks at a time (int64-exact coordinates)."""
        n = self.n
        xy = self.S.xy[self.order]
        xs, ys = xy[:, 0], xy[:, 1]
        fx, fy = xs.astype(np.float64), ys.astype(np.float64)
        for lo in range(0, n, self._BLOCK):
            hi = min(n, lo + self._BLOCK)
            rows = np.arange(lo, hi)
            with np.errstate(divide="ignore", invalid="ignore"):
                key = (fy[None, :] - fy[rows, None]) / (fx[None, :] - fx[rows, None])
            # equal x: the lex-later point is above, so a vertical line sorts after
            # every finite slope; the point itself goes last (no NaN: it would
            # knock argsort off its vectorized path)
            key[~np.isfinite(key)] = np.finfo(np.float64).max
            key[np.arange(hi - lo), rows] = np.inf
            perm = np.argsort(key, axis=1)[:, :-1]
            dx = xs[perm] - xs[rows, None]
            dy = ys[perm] - ys[rows, None]
            flip = (dx < 0) | ((dx == 0) & (dy < 0))
            dx = np.where(flip, -dx, dx)
            dy = np.where(flip, -dy, dy)
            ok = (dy[:, :-1] * dx[:, 1:] < dy[:, 1:] * dx[:, :-1]).all(axis=1)
            for r, i in enumerate(rows):
                yield int(i), perm[r] if ok[r] else self._exact_order(int(i))

    def _exact_order(self, i: int) -> np.ndarray:
        pts = self._sorted_pts()
        xi, yi = pts[i]
        vecs = []
        for j in range(self.n):
            if j == i:
                continue
            if j < i:
                vecs.append((j, xi - pts[j][0], yi - pts[j][1]))
            else:
                vecs.append((j, pts[j][0] - xi, pts[j][1] - yi))
        vecs.sort(key=cmp_to_key(lambda a, b: _slope_cmp(a[1:], b[1:])))
        for a, b in zip(vecs, vecs[1:]):
            if _slope_cmp(a[1:], b[1:]) == 0:
                raise DegenerateInput("collinear triple in cup/cap search")
        return np.asarray([v[0] for v in vecs], dtype=np.int64)

    def _angular_orders(self):
        """Yield, for each rank i, the other ranks sorted by slope of the line through i."""
        if self.S.fast:
            yield from self._fast_orders()
        else:
            for i in range(self.n):
                yield i, self._exact_order(i)

    def _fill(self):
        W = self.W
        cup, cap = self.cup, self.cap
        for i, others in self._angular_orders():
            incoming = others < i
            cols_in = others[incoming]
            enc_cup = np.zeros(len(others), dtype=cup.dtype)
            enc_cap = np.zeros(len(others), dtype=cap.dtype)
            enc_cup[incoming] = (cup[cols_in, i] // W) * W + (cols_in + 1)
            enc_cap[incoming] = (cap[cols_in, i] // W) * W + (cols_in + 1)
            pre = np.maximum.accumulate(enc_cup)
            suf = np.maximum.accumulate(enc_cap[::-1])[::-1]
            out = ~incoming
            targets = others[out]
            best_cup = pre[out]
            best_cap = suf[out]
            cup[i, targets] = np.where(best_cup > 0, best_cup + W, 2 * W)
            cap[i, targets] = np.where(best_cap > 0, best_cap + W, 2 * W)

    def _table(self, kind: Kind) -> np.ndarray:
        return self.cup if kind is Kind.CUP else self.cap

    def lengths(self, kind: Kind) -> np.ndarray:
        return self._table(kind) // self.W

    def longest_length(self, kind: Kind) -> int:
        if self.n < 2:
            return self.n
        return int(self.lengths(kind).max())

    def chain_ending(self, kind: Kind, i: int, j: int) -> list[int]:
        """Longest chain of the given kind whose last edge is rank i -> rank j (as ranks)."""
        table = self._table(kind)
        chain = [j, i]
        while True:
            pred = int(table[i, j] % self.W) - 1
            if pred < 0:
                break
            chain.append(pred)
            i, j = pred, i
        return chain[::-1]

    def to_indices(self, ranks: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.order[r] for r in ranks)

    def longest(self, kind: Kind) -> CupCap:
        if self.n < 2:
            return CupCap(kind, tuple(self.order))
        lens = self.lengths(kind)
        flat = int(np.argmax(lens))
        i, j = divmod(flat, self.n)
        return CupCap(kind, self.to_indices(self.chain_ending(kind, i, j)))

    def edges_at_least(self, kind: Kind, length: int) -> np.ndarray:
        """(E, 2) array of rank pairs (i, j) whose best chain has >= length points."""
        ii, jj = np.nonzero(self._table(kind) >= length * self.W)
        return np.stack([ii, jj], axis=1)


def longest_cup(S) -> CupCap:
    return CupCapTable(S).longest(Kind.CUP)


def longest_cap(S) -> CupCap:
    return CupCapTable(S).longest(Kind.CAP)


def find_cup_or_cap(S, k: int, l: int, table: CupCapTable | None = None) -> CupCap:
    """Return a k-cup or an l-cap (exactly that many points), cup preferred.

    Raises :class:`NotFound` when the set contains neither.
    """
    table = CupCapTable(S) if table is None else table
    cup = table.longest(Kind.CUP)
    if len(cup) >= k:
        return CupCap(Kind.CUP, cup.indices[:k])
    cap = table.longest(Kind.CAP)
    if len(cap) >= l:
        return CupCap(Kind.CAP, cap.indices[:l])
    raise NotFound(f"no {k}-cup (longest {len(cup)}) and no {l}-cap (longest {len(cap)})")


class Color(enum.Enum):
    RED = "red"
    BLUE = "blue"


class TransitiveColoring:
    """A 2-coloring of the triples i < j < k of ``range(n_elements)``.

    ``color_of`` is evaluated once per triple and cached in a dense boolean
    table (True = RED).
    """

    def __init__(self, n_elements: int, color_of: Callable[[int, int, int], Color]):
        self.n_elements = n_elements
        self.color_of = color_of
        self._red: np.ndarray | None = None

    @classmethod
    def from_red_table(cls, red: np.ndarray) -> "TransitiveColoring":
        n = red.shape[0]
        obj = cls(n, lambda i, j, k: Color.RED if red[i, j, k] else Color.BLUE)
        obj._red = red.astype(bool)
        return obj

    @property
    def red(self) -> np.ndarray:
        if self._red is None:
            n = self.n_elements
            red = np.zeros((n, n, n), dtype=bool)
            for i, j, k in itertools.combinations(range(n), 3):
                c = self.color_of(i, j, k)
                if c is Color.RED:
                    red[i, j, k] = True
                elif c is not Color.BLUE:
                    raise ContractViolation(f"color_of{(i, j, k)} returned {c!r}")
            self._red = red
        return self._red

    def is_red(self, i: int, j: int, k: int) -> bool:
        return bool(self.red[i, j, k])


TRANSITIVITY_SAMPLES = 10_000


def check_transitivity(coloring: TransitiveColoring, samples: int = TRANSITIVITY_SAMPLES, seed: int = 0) -> None:
    """Spot-check the transitivity promise; raise :class:`ContractViolation` on a failure."""
    n = coloring.n_elements
    red = coloring.red
    total = math.comb(n, 4)
    if total <= samples:
        quads = itertools.combinations(range(n), 4)
    else:
        rng = random.Random(seed)
        quads = (tuple(sorted(rng.sample(range(n), 4))) for _ in range(samples))
    for a, b, c, d in quads:
        first, second = red[a, b, c], red[b, c, d]
        if first == second and not (red[a, b, d] == first and red[a, c, d] == first):
            color = "RED" if first else "BLUE"
            raise ContractViolation(f"transitivity fails on {(a, b, c, d)} for {color}")


def _clique_tables(red: np.ndarray):
    """Longest sequences whose consecutive triples are red (resp. blue), per last pair."""
    n = red.shape[0]
    W = n + 1
    tables = {}
    for want_red in (True, False):
        enc = np.zeros((n, n), dtype=np.int64)
        enc[0, 1:] = 2 * W
        for b in range(1, n - 1):
            vals = (enc[:b, b] // W) * W + np.arange(b) + 1
            # mask[a, c]: triple (a, b, c) has the wanted color
            mask = red[:b, b, b + 1:] if want_red else ~red[:b, b, b + 1:]
            best = np.where(mask, vals[:, None], 0).max(axis=0)
            enc[b, b + 1:] = np.where(best > 0, (best // W + 1) * W + best % W, 2 * W)
        tables[want_red] = enc
    return tables, W


def _backtrack(enc, W, i, j):
    seq = [j, i]
    while True:
        pred = int(enc[i, j] % W) - 1
        if pred < 0:
            break
        seq.append(pred)
        i, j = pred, i
    return seq[::-1]


def longest_cliques(coloring: TransitiveColoring) -> dict[Color, list[int]]:
    """Longest RED and BLUE cliques (consecutive-triple certified)."""
    n = coloring.n_elements
    if n <= 2:
        return {Color.RED: list(range(n)), Color.BLUE: list(range(n))}
    tables, W = _clique_tables(coloring.red)
    out = {}
    for want_red, color in ((True, Color.RED), (False, Color.BLUE)):
        enc = tables[want_red]
        upper = np.triu(enc // W, 1)
        flat = int(np.argmax(upper))
        i, j = divmod(flat, n)
        out[color] = _backtrack(enc, W, i, j)
    return out


def certify_clique(coloring: TransitiveColoring, seq: Sequence[int], color: Color) -> bool:
    want = color is Color.RED
    red = coloring.red
    return all(bool(red[a, b, c]) == want for a, b, c in zip(seq, seq[1:], seq[2:]))


def transitive_clique(coloring: TransitiveColoring, k: int, l: int, check_samples: int = TRANSITIVITY_SAMPLES
                      ) -> tuple[Color, list[int]]:
    """A RED k-clique or a BLUE l-clique (RED preferred), trimmed to that size."""
    check_transitivity(coloring, check_samples)
    best = longest_cliques(coloring)
    if len(best[Color.RED]) >= k:
        return Color.RED, best[Color.RED][:k]
    if len(best[Color.BLUE]) >= l:
        return Color.BLUE, best[Color.BLUE][:l]
    raise NotFound(
        f"no red {k}-clique (longest {len(best[Color.RED])}) "
        f"and no blue {l}-clique (longest {len(best[Color.BLUE])})"
    )


def cupcap_coloring(S, indices: Sequence[int] | None = None) -> TransitiveColoring:
    """Color triples of x-sorted points RED when they form a cup, BLUE for a cap."""
    S = as_pointset(S)
    idx = lex_order(S) if indices is None else sorted(indices, key=lambda i: S.points[i])
    pts = [S.points[i] for i in idx]
    return TransitiveColoring(len(pts), lambda a, b, c: Color.RED if orient_sign(pts[a], pts[b], pts[c]) > 0 else Color.BLUE)
