"""Planted fixtures: a cap skeleton with points sampled inside chosen support regions.

Used by the gluing and region-order tests and by the demos.  Everything is
exact: region membership is decided by orientation signs, and the final
set is checked for general position.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from .cupcap import Color, CupCap, Kind, longest_cliques
from .errors import DegenerateInput
from .geometry import PointSet, find_collinear_triple
from .order import RegionOrder
from .pipeline import CapFrame, Side, SidedCap, sided_coloring, sided_cap_ok, support_of


def cap_skeleton(m: int, scale: int = 1000) -> list[tuple[int, int]]:
    """m points on the concave parabola y = j (m + 1 - j): a cap."""
    if m < 4:
        raise ValueError("need at least 4 skeleton points")
    return [(j * scale, j * (m + 1 - j) * scale) for j in range(1, m + 1)]


def _line_intersection(a, b, c, d):
    """Intersection of lines ab and cd as a pair of Fractions (None if parallel)."""
    den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
    if den == 0:
        return None
    t = Fraction((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0]), den)
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def region_box(skeleton, i: int):
    """Integer bounding box of the (triangular) region T_i of a cap skeleton."""
    m = len(skeleton)
    p = lambda j: skeleton[(j - 1) % m]
    apex = _line_intersection(p(i - 1), p(i), p(i + 1), p(i + 2))
    xs = [p(i)[0], p(i + 1)[0]]
    ys = [p(i)[1], p(i + 1)[1]]
    if apex is not None:
        xs.append(apex[0])
        ys.append(apex[1])
    return (math.floor(min(xs)), math.ceil(max(xs)), math.floor(min(ys)), math.ceil(max(ys)))


@dataclass
class PlantedRegions:
    S: PointSet
    frame: CapFrame
    members: dict[int, tuple[int, ...]]  # region index -> point indices


def planted_regions(m: int, counts: dict[int, int], seed: int, scale: int = 1000,
                    max_tries: int = 100) -> PlantedRegions:
    """A cap of m points plus ``counts[i]`` random points inside each region T_i."""
    rng = np.random.Generator(np.random.PCG64(seed))
    skeleton = cap_skeleton(m, scale)
    for _ in range(max_tries):
        pts = list(skeleton)
        frame0 = CapFrame(PointSet(skeleton), CupCap(Kind.CAP, tuple(range(m))))
        for i, want in sorted(counts.items()):
            x0, x1, y0, y1 = region_box(skeleton, i)
            got = 0
            while got < want:
                cand = rng.integers([x0, y0], [x1, y1], endpoint=True, size=(64, 2))
                probe = PointSet._trusted(tuple(map(tuple, cand.tolist())), "probe")
                inside = _inside_region(frame0, i, probe)
                for x, y in cand[inside].tolist():
                    if got < want and (x, y) not in pts:
                        pts.append((x, y))
                        got += 1
        S = PointSet(pts, id=f"planted-m{m}-s{seed}", check=False)
        if find_collinear_triple(S) is not None:
            continue
        frame = CapFrame(S, CupCap(Kind.CAP, tuple(range(m))))
        regions = support_of(S, CupCap(Kind.CAP, tuple(range(m))), frame)
        members = {r.region_index: r.members for r in regions if r.region_index in counts}
        if all(len(members[i]) == counts[i] for i in counts):
            return PlantedRegions(S, frame, members)
    raise DegenerateInput("could not plant a general-position fixture")


def _inside_region(frame: CapFrame, i: int, probe: PointSet) -> np.ndarray:
    from .pipeline import orient_batch

    xy = probe.xy
    qx, qy = xy[:, 0], xy[:, 1]
    a, b, c, d = (frame.point(j) for j in (i - 1, i, i + 1, i + 2))
    return ((orient_batch(b[0], b[1], c[0], c[1], qx, qy) > 0)
            & (orient_batch(a[0], a[1], b[0], b[1], qx, qy) < 0)
            & (orient_batch(c[0], c[1], d[0], d[1], qx, qy) < 0))


def region_chain(planted: PlantedRegions, i: int) -> list[int]:
    """Longest chain of region i under the order of its base segment."""
    order = RegionOrder(planted.frame.S, planted.frame.base(i), planted.members[i])
    return [order.elements[u] for u in order.chain_positions()]


def best_sided_cap(planted: PlantedRegions, i: int, side: Side, chain: list[int] | None = None) -> SidedCap:
    """Longest left-cap or right-cap inside the chain of region i."""
    chain = region_chain(planted, i) if chain is None else chain
    cliques = longest_cliques(sided_coloring(planted.frame, i, chain))
    seq = cliques[Color.RED if side is Side.LEFT else Color.BLUE]
    cap = SidedCap(side, i, tuple(chain[p] for p in seq))
    assert sided_cap_ok(planted.frame, cap)
    return cap
