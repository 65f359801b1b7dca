"""The region order and its chain/antichain dichotomy.

Points of one support region sit on one side of a base segment ``B``.  We
write ``p < q`` when ``q`` lies in the closed triangle spanned by ``B`` and
``p``; the relation is a strict partial order, and ``p < q`` forces ``q``
strictly closer to the line through ``B``, which gives a topological order
for free.

Chains and antichains come from Mirsky levels (level = length of the
longest chain ending at a point).  Every level is an antichain, and the
number of levels equals the longest chain, so either a chain of length
``L`` exists or some level has at least ``ceil(m / L)`` points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
import math
from typing import Sequence

import numpy as np

from .geometry import Point, as_pointset, orient_batch, orient_sign


class Tag(enum.Enum):
    CHAIN = "chain"
    ANTICHAIN = "antichain"


def precedes(p, q, base) -> bool:
    """True iff q lies in the closed triangle spanned by ``base`` and p."""
    if tuple(p) == tuple(q):
        raise ValueError("precedes() needs two distinct points")
    b1, b2 = base
    s = orient_sign(b1, b2, p)
    if s == 0:
        raise ValueError("p lies on the base line")
    return (orient_sign(b1, b2, q) * s >= 0
            and orient_sign(b2, p, q) * s >= 0
            and orient_sign(p, b1, q) * s >= 0)


def crosses_segment(p, q, a, b) -> bool:
    """Does the line through p, q properly cross the segment ab?"""
    return orient_sign(p, q, a) * orient_sign(p, q, b) < 0


class RegionOrder:
    """The order on ``elements`` (indices into ``S``) relative to ``base``.

    ``less[u, v]`` holds ``elements[u] < elements[v]``.
    """

    def __init__(self, S, base: tuple, elements: Sequence[int]):
        self.S = as_pointset(S)
        self.base = (Point(*base[0]), Point(*base[1]))
        self.elements = tuple(int(e) for e in elements)
        self.less = self._comparability()
        self._levels: list[int] | None = None
        self._pred: list[int] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def _comparability(self) -> np.ndarray:
        m = len(self.elements)
        if m == 0:
            return np.zeros((0, 0), dtype=bool)
        xy = self.S.xy[list(self.elements)]
        if xy.dtype != object and any(abs(c) > (1 << 20) for b in self.base for c in b):
            xy = xy.astype(object)
        dtype = xy.dtype
        b1 = np.array(self.base[0], dtype=dtype)
        b2 = np.array(self.base[1], dtype=dtype)
        xs, ys = xy[:, 0], xy[:, 1]
        side = orient_batch(b1[0], b1[1], b2[0], b2[1], xs, ys).astype(np.int64)
        if np.any(side == 0) or np.any(side != side[0]):
            raise ValueError("region elements must lie strictly on one side of the base line")
        s = int(side[0])
        # rows are p, columns are q
        px, py = xs[:, None], ys[:, None]
        qx, qy = xs[None, :], ys[None, :]
        o2 = orient_batch(b2[0], b2[1], px, py, qx, qy).astype(np.int64) * s
        o3 = orient_batch(px, py, b1[0], b1[1], qx, qy).astype(np.int64) * s
        less = (o2 >= 0) & (o3 >= 0)
        np.fill_diagonal(less, False)
        self.distance = self._base_distance(xs, ys, b1, b2, s)
        return less

    @staticmethod
    def _base_distance(xs, ys, b1, b2, s):
        d = (b2[0] - b1[0]) * (ys - b1[1]) - (b2[1] - b1[1]) * (xs - b1[0])
        return [int(v) * s for v in d]

    def topological(self) -> list[int]:
        """Positions ordered farthest-from-base first (a linear extension)."""
        return sorted(range(len(self.elements)), key=lambda u: (-self.distance[u], u))

    def _mirsky(self):
        m = len(self.elements)
        level = np.zeros(m, dtype=np.int64)
        pred = [-1] * m
        for v in self.topological():
            preds = np.nonzero(self.less[:, v])[0]
            if preds.size:
                u = int(preds[np.argmax(level[preds])])
                level[v] = level[u] + 1
                pred[v] = u
            else:
                level[v] = 1
        self._levels = level.tolist()
        self._pred = pred

    @property
    def levels(self) -> list[int]:
        if self._levels is None:
            self._mirsky()
        return self._levels

    def mirsky_partition(self) -> list[list[int]]:
        """Element indices grouped by level (level 1 first)."""
        levels = self.levels
        if not levels:
            return []
        out: list[list[int]] = [[] for _ in range(max(levels))]
        for u, lv in enumerate(levels):
            out[lv - 1].append(self.elements[u])
        return out

    def chain_positions(self) -> list[int]:
        levels = self.levels
        if not levels:
            return []
        v = int(np.argmax(levels))
        chain = []
        while v >= 0:
            chain.append(v)
            v = self._pred[v]
        return chain[::-1]

    def position(self, element: int) -> int:
        return self.elements.index(element)

    def is_chain(self, members: Sequence[int]) -> bool:
        pos = [self.position(e) for e in members]
        return all(self.less[a, b] for a, b in zip(pos, pos[1:]))

    def is_antichain(self, members: Sequence[int]) -> bool:
        pos = [self.position(e) for e in members]
        sub = self.less[np.ix_(pos, pos)]
        return not sub.any()


@dataclass(frozen=True)
class ChainAntichain:
    kind: Tag
    members: tuple[int, ...]
    alpha_used: Fraction
    bound: int = 0

    def __len__(self) -> int:
        return len(self.members)


def _iroot_ceil(x: int, b: int) -> int:
    """Smallest integer c >= 0 with c**b >= x."""
    if x <= 0:
        return 0
    if b == 1:
        return x
    if b == 2:
        r = math.isqrt(x)
        return r if r * r == x else r + 1
    # integer Newton from above converges to floor(x ** (1/b))
    c = 1 << -(-x.bit_length() // b)
    while True:
        d = ((b - 1) * c + x // c ** (b - 1)) // b
        if d >= c:
            break
        c = d
    return c if c ** b >= x else c + 1


def ceil_power(m: int, exponent: Fraction) -> int:
    """ceil(m ** exponent) for a rational exponent in [0, 1], exactly."""
    exponent = Fraction(exponent)
    if not 0 <= exponent <= 1:
        raise ValueError("exponent must lie in [0, 1]")
    return _iroot_ceil(m ** exponent.numerator, exponent.denominator)


def longest_chain(order: RegionOrder) -> ChainAntichain:
    chain = [order.elements[u] for u in order.chain_positions()]
    return ChainAntichain(Tag.CHAIN, tuple(chain), Fraction(0), len(chain))


def dilworth_split(order: RegionOrder, alpha) -> ChainAntichain:
    """A chain of size >= ceil(m^(1-alpha)) or an antichain of size >= ceil(m^alpha)."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie strictly between 0 and 1")
    m = len(order)
    chain_bound = ceil_power(m, 1 - alpha)
    anti_bound = ceil_power(m, alpha)
    chain = [order.elements[u] for u in order.chain_positions()]
    if len(chain) >= chain_bound:
        return ChainAntichain(Tag.CHAIN, tuple(chain), alpha, chain_bound)
    levels = order.mirsky_partition()
    widest = max(levels, key=len)
    if len(widest) < anti_bound:
        raise AssertionError(f"Mirsky bound failed: chain {len(chain)}, widest level {len(widest)}, m={m}")
    return ChainAntichain(Tag.ANTICHAIN, tuple(widest), alpha, anti_bound)
