"""Extraction of large convex subsets by the cap / support-region argument.

Outline of :func:`extract`:

1. find a (k+3)-cap or cup ``X`` whose support regions are well populated
   (cups are handled by turning the plane half way round, so only caps
   are coded);
2. split every inner region under the base-segment order into a chain or
   an antichain;
3. Case 1: with ``t`` pairwise non-adjacent antichain regions, take a cap
   inside each; together they form one cap;
4. Case 2: along a run of consecutive chain regions, color triples as
   left-caps / right-caps, search the coloring for cliques on the growth
   schedule, and glue a left-cap to the right-cap in the next region.

``Mode.STRICT`` insists on the asymptotic thresholds (and so refuses any
input of realistic size); ``Mode.BEST_EFFORT`` runs the same steps with
targets adapted to what each region actually holds and never returns less
than the longest cup or cap of the input.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cupcap import (
    Color,
    CupCap,
    CupCapTable,
    Kind,
    TransitiveColoring,
    check_transitivity,
    cupcap_threshold,
    is_cap,
    longest_cliques,
    transitive_clique,
)
from .errors import (
    ContractViolation,
    Insufficient,
    NotFound,
    ScheduleMiss,
    ThresholdUnmet,
    VerificationFailed,
)
from .geometry import PointSet, as_pointset, is_convex_position, orient_batch
from .oracle import ConvexWitness, verify_witness
from .order import ChainAntichain, RegionOrder, Tag, _iroot_ceil, dilworth_split

log = logging.getLogger(__name__)


class Mode(enum.Enum):
    STRICT = "strict"
    BEST_EFFORT = "best-effort"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


# precision (bits) of the rational bounds on log2 n and n^(1/3)
_LOG_BITS = 64
_ROOT_BITS = 32
ALPHA_CLAMP = Fraction(1, 2)


def _log2_bounds(n: int) -> tuple[Fraction, Fraction]:
    b = (n ** _LOG_BITS).bit_length()
    return Fraction(b - 1, _LOG_BITS), Fraction(b, _LOG_BITS)


def _cbrt_bounds(x: int) -> tuple[Fraction, Fraction]:
    """Rational bounds on the cube root of x with 2^-32 resolution."""
    scaled = x << (3 * _ROOT_BITS)
    hi = _iroot_ceil(scaled, 3)
    lo = hi if hi ** 3 == scaled else hi - 1
    return Fraction(lo, 1 << _ROOT_BITS), Fraction(hi, 1 << _ROOT_BITS)


@dataclass(frozen=True)
class PipelineParams:
    n: int
    k: int
    K: int
    alpha: Fraction
    alpha_raw: Fraction
    alpha_clamped: bool
    t: int
    steps: int
    cap_target: int  # ceil(2 n^(2/3)), cap size sought in Case 1
    schedule: tuple[tuple[int, int], ...]  # (left-cap target, right-cap target) per Case-2 region
    region_fraction_exponent: int
    mode: Mode
    required_log2_upper: Fraction  # upper bound on n + 6 n^(2/3) log2 n

    def meets_threshold(self, N: int) -> bool:
        """Conservative: True only if N >= 2^(n + 6 n^(2/3) log2 n) is certain."""
        return N > 0 and N.bit_length() - 1 >= math.ceil(self.required_log2_upper)

    def region_threshold(self, N: int) -> Fraction:
        return Fraction(N, 2 ** (self.region_fraction_exponent * self.k))

    def to_dict(self) -> dict:
        return {
            "n": self.n, "k": self.k, "K": self.K,
            "alpha": str(self.alpha), "alpha_raw": str(self.alpha_raw),
            "alpha_clamped": self.alpha_clamped, "t": self.t, "steps": self.steps,
            "cap_target": self.cap_target, "schedule": [list(s) for s in self.schedule],
            "region_fraction_exponent": self.region_fraction_exponent,
            "mode": self.mode.value,
            "required_log2_N_upper": float(self.required_log2_upper),
        }


def params_for(n: int, mode: Mode = Mode.BEST_EFFORT, region_fraction_exponent: int = 32) -> PipelineParams:
    if n < 3:
        raise ValueError("n must be at least 3")
    k = _iroot_ceil(n * n, 3)
    root = _iroot_ceil(n, 3)
    t = (root + 1) // 2
    log_lo, log_hi = _log2_bounds(n)
    cbrt_lo, cbrt_hi = _cbrt_bounds(n)
    alpha_raw = 3 * log_lo / cbrt_hi
    clamped = alpha_raw >= 1
    alpha = ALPHA_CLAMP if clamped else alpha_raw
    schedule = []
    i = 1
    while True:
        schedule.append((min(i * k, n), n - i * k + k))
        if i * k >= n:
            break
        i += 1
    required = n + 6 * cbrt_hi * cbrt_hi * log_hi
    return PipelineParams(
        n=n, k=k, K=k, alpha=alpha, alpha_raw=alpha_raw, alpha_clamped=clamped, t=t,
        steps=root, cap_target=_iroot_ceil(8 * n * n, 3), schedule=tuple(schedule),
        region_fraction_exponent=region_fraction_exponent, mode=mode,
        required_log2_upper=required,
    )


class CapFrame:
    """A cap ``X`` together with the (possibly half-turned) point set it lives in.

    ``xs`` lists the indices of X from left to right; ``vertex(i)`` is the
    i-th of them, 1-based and cyclic.
    """

    def __init__(self, S, X: CupCap):
        S = as_pointset(S)
        self.original = S
        self.reflected = X.kind is Kind.CUP
        self.S = S.reflected() if self.reflected else S
        self.kind = X.kind
        self.xs = tuple(sorted(X.indices, key=lambda i: self.S.points[i]))
        if len(self.xs) >= 3 and not is_cap(self.S, self.xs):
            raise ValueError("X is not a cap in its frame")

    @property
    def m(self) -> int:
        return len(self.xs)

    def vertex(self, i: int) -> int:
        return self.xs[(i - 1) % self.m]

    def point(self, i: int):
        return self.S.points[self.vertex(i)]

    def base(self, i: int):
        """Endpoints of B_i = x_{i-1} x_{i+2}."""
        return (self.point(i - 1), self.point(i + 2))


@dataclass(frozen=True)
class SupportRegion:
    region_index: int
    base: tuple[int, int]  # vertex indices of B_i
    edge: tuple[int, int]
    prev_line: tuple[int, int]
    next_line: tuple[int, int]
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


def _region_masks(frame: CapFrame) -> list[np.ndarray]:
    xy = frame.S.xy
    qx, qy = xy[:, 0], xy[:, 1]
    masks = []
    for i in range(1, frame.m):
        a, b, c, d = (frame.point(j) for j in (i - 1, i, i + 1, i + 2))
        beyond = orient_batch(b[0], b[1], c[0], c[1], qx, qy) > 0
        left_ok = orient_batch(a[0], a[1], b[0], b[1], qx, qy) < 0
        right_ok = orient_batch(c[0], c[1], d[0], d[1], qx, qy) < 0
        masks.append(beyond & left_ok & right_ok)
    return masks


def support_of(S, X: CupCap, frame: CapFrame | None = None) -> list[SupportRegion]:
    """Regions T_1..T_{|X|-1} of the support of X with the points of S inside them."""
    if len(X) < 4:
        raise ValueError("support regions need |X| >= 4")
    frame = CapFrame(S, X) if frame is None else frame
    masks = _region_masks(frame)
    if len(masks) > 1 and np.any(np.sum(masks, axis=0) > 1):
        raise AssertionError("support regions overlap")
    regions = []
    for i, mask in enumerate(masks, start=1):
        regions.append(SupportRegion(
            region_index=i,
            base=(frame.vertex(i - 1), frame.vertex(i + 2)),
            edge=(frame.vertex(i), frame.vertex(i + 1)),
            prev_line=(frame.vertex(i - 1), frame.vertex(i)),
            next_line=(frame.vertex(i + 1), frame.vertex(i + 2)),
            members=tuple(int(j) for j in np.nonzero(mask)[0]),
        ))
    return regions


@dataclass
class FractionalCap:
    X: CupCap
    frame: CapFrame
    regions: list[SupportRegion]
    occupancies: list[int]
    threshold: Fraction
    meets_threshold: bool
    candidates_evaluated: int

    @property
    def min_occupancy(self) -> int:
        return min(self.occupancies) if self.occupancies else 0


DEFAULT_CANDIDATE_BUDGET = 64
RESTART_DIVISOR = 8


def _candidate_caps(S, size: int, table: CupCapTable, budget: int, seed: int):
    """Deterministic stream of distinct (size)-cups/caps.

    Sources, in order: windows of the longest cup and cap, the chains
    ending at up to ``budget`` sampled DP edges per kind, and the longest
    chains of ``budget // RESTART_DIVISOR`` random subsamples.
    """
    seen = set()
    rng = np.random.Generator(np.random.PCG64(seed))

    def emit(kind, idx):
        key = (kind, tuple(sorted(idx)))
        if key in seen:
            return None
        seen.add(key)
        return CupCap(kind, tuple(idx))

    n = len(S)
    for kind in (Kind.CAP, Kind.CUP):
        chain = table.longest(kind).indices
        starts = range(0, len(chain) - size + 1)
        if len(starts) > budget:
            starts = sorted(rng.choice(len(starts), size=budget, replace=False).tolist())
        for start in starts:
            c = emit(kind, chain[start:start + size])
            if c is not None:
                yield c
    for kind in (Kind.CAP, Kind.CUP):
        edges = table.edges_at_least(kind, size)
        if len(edges) > budget:
            edges = edges[np.sort(rng.choice(len(edges), size=budget, replace=False))]
        for i, j in edges.tolist():
            ranks = table.chain_ending(kind, i, j)[-size:]
            c = emit(kind, table.to_indices(ranks))
            if c is not None:
                yield c
    sample_size = min(n, 8 * size)
    for _ in range(budget // RESTART_DIVISOR):
        sub = np.sort(rng.choice(n, size=sample_size, replace=False)).tolist()
        sub_table = CupCapTable(S.subset(sub))
        for kind in (Kind.CAP, Kind.CUP):
            chain = sub_table.longest(kind).indices
            if len(chain) >= size:
                start = int(rng.integers(len(chain) - size + 1))
                c = emit(kind, [sub[i] for i in chain[start:start + size]])
                if c is not None:
                    yield c


def find_fractional_cap(S, k: int, fraction_threshold, mode: Mode = Mode.BEST_EFFORT,
                        table: CupCapTable | None = None, budget: int = DEFAULT_CANDIDATE_BUDGET,
                        seed: int = 0) -> FractionalCap:
    """A (k+3)-cap or cup whose regions T_1..T_{k+2} each hold >= threshold points.

    BEST_EFFORT returns the candidate maximizing the minimum occupancy
    (ties broken by total occupancy, then by discovery order); STRICT
    returns the first candidate meeting the threshold or raises NotFound.
    """
    S = as_pointset(S)
    if k < 1:
        raise ValueError("k must be at least 1")
    size = k + 3
    threshold = Fraction(fraction_threshold)
    if size > len(S):
        raise NotFound(f"need {size} points for a (k+3)-cap, set has {len(S)}")
    table = CupCapTable(S) if table is None else table
    best = None
    best_key = None
    evaluated = 0
    for X in _candidate_caps(S, size, table, budget, seed):
        evaluated += 1
        frame = CapFrame(S, X)
        regions = support_of(S, X, frame)
        occ = [len(r) for r in regions]
        meets = all(o >= threshold for o in occ)
        key = (min(occ), sum(occ))
        if best_key is None or key > best_key:
            best_key = key
            best = FractionalCap(X, frame, regions, occ, threshold, meets, 0)
        if meets and mode is Mode.STRICT:
            break
    if best is None:
        raise NotFound(f"no {size}-cup or {size}-cap in the set")
    best.candidates_evaluated = evaluated
    if mode is Mode.STRICT and not best.meets_threshold:
        raise NotFound(f"no candidate reaches occupancy {threshold} (best minimum {best.min_occupancy})")
    return best


def region_order(frame: CapFrame, region: SupportRegion) -> RegionOrder:
    return RegionOrder(frame.S, frame.base(region.region_index), region.members)


def dilworth_regions(frame: CapFrame, regions: Sequence[SupportRegion], alpha) -> dict[int, ChainAntichain]:
    """Chain/antichain split of each inner region (those with a base segment)."""
    out = {}
    for region in regions:
        i = region.region_index
        if not 2 <= i <= frame.m - 2:
            continue
        out[i] = dilworth_split(region_order(frame, region), alpha)
    return out


def select_nonadjacent(indices: Sequence[int]) -> list[int]:
    """Greedy left-to-right choice of pairwise non-consecutive indices."""
    chosen: list[int] = []
    for i in sorted(indices):
        if not chosen or i > chosen[-1] + 1:
            chosen.append(i)
    return chosen


def case1_assemble(frame: CapFrame, tagged: dict[int, ChainAntichain], params: PipelineParams,
                   mode: Mode = Mode.BEST_EFFORT) -> ConvexWitness:
    """Union of caps found inside pairwise non-adjacent antichain regions."""
    anti = [i for i, ca in tagged.items() if ca.kind is Tag.ANTICHAIN]
    chosen = select_nonadjacent(anti)
    if len(chosen) < params.t:
        raise Insufficient(f"{len(chosen)} non-adjacent antichain regions, need {params.t}")
    chosen = chosen[:params.t]
    trace: list[dict] = [{"step": "case1_select", "regions": chosen}]
    caps: list[tuple[int, ...]] = []
    for i in chosen:
        members = list(tagged[i].members)
        sub = frame.S.subset(members)
        table = CupCapTable(sub)
        cup = table.longest(Kind.CUP)
        if len(cup) >= params.n:
            idx = tuple(members[j] for j in cup.indices[:params.n])
            trace.append({"step": "case1_cup", "region": i, "size": params.n})
            w = ConvexWitness(idx, trace=trace + [{"step": "result", "rule": "Case1"}])
            _verify_or_raise(frame.S, w)
            return w
        cap = table.longest(Kind.CAP)
        if mode is Mode.STRICT and len(cap) < params.cap_target:
            raise ScheduleMiss(f"region {i}: no {params.n}-cup and no {params.cap_target}-cap")
        take = cap.indices[:params.cap_target] if mode is Mode.STRICT else cap.indices
        caps.append(tuple(members[j] for j in take))
        trace.append({"step": "case1_cap", "region": i, "size": len(take)})
    union = sorted({p for c in caps for p in c}, key=lambda j: frame.S.points[j])
    if not (is_cap(frame.S, union) and is_convex_position(frame.S, union)):
        raise VerificationFailed(f"union of caps from regions {chosen} is not a cap")
    trace.append({"step": "result", "rule": "Case1", "size": len(union)})
    return ConvexWitness(tuple(union), trace=trace)


@dataclass(frozen=True)
class SidedCap:
    side: Side
    region_index: int
    indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)


def sided_cap_ok(frame: CapFrame, cap: SidedCap) -> bool:
    """RIGHT: cap + x_i convex; LEFT: cap + x_{i+1} convex."""
    apex = frame.vertex(cap.region_index if cap.side is Side.RIGHT else cap.region_index + 1)
    return is_convex_position(frame.S, list(cap.indices) + [apex])


def sided_coloring(frame: CapFrame, region_index: int, chain: Sequence[int]) -> TransitiveColoring:
    """RED = left-cap triple, BLUE = right-cap triple, along a chain ordered by the region order.

    Raises ContractViolation when a triple is both or neither.
    """
    m = len(chain)
    red = np.zeros((m, m, m), dtype=bool)
    if m < 3:
        return TransitiveColoring.from_red_table(red)
    xy = frame.S.xy[list(chain)]
    px, py = xy[:, 0], xy[:, 1]
    A = (slice(None), None, None)
    B = (None, slice(None), None)
    C = (None, None, slice(None))
    T = orient_batch(px[A], py[A], px[B], py[B], px[C], py[C])
    is_four = []
    for apex_index in (region_index + 1, region_index):
        x = frame.point(apex_index)
        P = orient_batch(x[0], x[1], px[:, None], py[:, None], px[None, :], py[None, :])
        Pab, Pbc, Pac = P[:, :, None], P[None, :, :], P[:, None, :]
        Pba, Pca, Pcb = -Pab, -Pac, -Pbc
        x_in = (Pab == Pbc) & (Pbc == Pca)
        a_in = (Pba == T) & (T == Pac)
        b_in = (Pab == -T) & (-T == Pbc)
        c_in = (Pac == T) & (T == Pcb)
        is_four.append(~(x_in | a_in | b_in | c_in))
    left, right = is_four
    iu = np.zeros((m, m, m), dtype=bool)
    a, b, c = np.meshgrid(np.arange(m), np.arange(m), np.arange(m), indexing="ij")
    iu = (a < b) & (b < c)
    bad = iu & (left == right)
    if bad.any():
        trip = tuple(int(v) for v in np.argwhere(bad)[0])
        raise ContractViolation(f"triple {trip} of region {region_index} is "
                                f"{'both' if left[trip] else 'neither'} a left-cap and a right-cap")
    red = left & iu
    return TransitiveColoring.from_red_table(red)


def glue(S, left: SidedCap, right: SidedCap) -> ConvexWitness:
    """Join a left-cap of region i-1 with a right-cap of region i."""
    if left.side is not Side.LEFT or right.side is not Side.RIGHT:
        raise ValueError("glue() takes a LEFT cap and a RIGHT cap")
    if right.region_index != left.region_index + 1:
        raise ValueError(f"regions {left.region_index} and {right.region_index} are not adjacent")
    union = tuple(left.indices) + tuple(right.indices)
    if len(set(union)) != len(union):
        raise VerificationFailed("glued caps share points")
    if not is_convex_position(S, union):
        raise VerificationFailed(f"glued set of {len(union)} points is not in convex position")
    trace = [{"step": "glue", "left_region": left.region_index, "right_region": right.region_index,
              "left": list(left.indices), "right": list(right.indices)}]
    return ConvexWitness(union, trace=trace)


def _sided(frame, region_index, chain, seq, side) -> SidedCap:
    cap = SidedCap(side, region_index, tuple(chain[p] for p in seq))
    if not sided_cap_ok(frame, cap):
        raise ContractViolation(f"{side.value}-cap in region {region_index} is not convex with its apex")
    return cap


def case2_iterate(frame: CapFrame, run: Sequence[tuple[int, Sequence[int]]], params: PipelineParams,
                  mode: Mode = Mode.BEST_EFFORT) -> ConvexWitness:
    """Left-cap / right-cap growth along consecutive chain regions.

    ``run`` lists ``(region_index, chain)`` left to right, each chain in
    increasing region order.
    """
    if not run:
        raise Insufficient("Case 2 needs at least one chain region")
    for (i, _), (j, _) in zip(run, run[1:]):
        if j != i + 1:
            raise ValueError("Case-2 regions must be consecutive")
    trace: list[dict] = [{"step": "case2_run", "regions": [i for i, _ in run]}]
    if mode is Mode.STRICT:
        return _case2_strict(frame, run, params, trace)
    best: ConvexWitness | None = None
    prev_left: SidedCap | None = None
    progress = []
    for step, (i, chain) in enumerate(run, start=1):
        chain = list(chain)
        coloring = sided_coloring(frame, i, chain)
        check_transitivity(coloring)
        cliques = longest_cliques(coloring)
        left = _sided(frame, i, chain, cliques[Color.RED], Side.LEFT)
        right = _sided(frame, i, chain, cliques[Color.BLUE], Side.RIGHT)
        if step <= len(params.schedule):
            lt, rt = params.schedule[step - 1]
            progress.append({"region": i, "left": len(left), "right": len(right),
                             "left_target": lt, "right_target": rt,
                             "met": len(right) >= rt or len(left) >= lt})
        else:
            progress.append({"region": i, "left": len(left), "right": len(right)})
        options = [ConvexWitness(left.indices, trace=[{"step": "left_cap", "region": i}]),
                   ConvexWitness(right.indices, trace=[{"step": "right_cap", "region": i}])]
        if prev_left is not None and len(prev_left) + len(right) > 0:
            options.append(glue(frame.S, prev_left, right))
        for w in options:
            if best is None or w.size > best.size:
                best = w
        prev_left = left
    trace.append({"step": "schedule", "progress": progress})
    trace.extend(best.trace)
    trace.append({"step": "result", "rule": "Case2", "size": best.size})
    return ConvexWitness(best.indices, trace=trace)


def _case2_strict(frame, run, params, trace):
    prev_left = None
    for step, (i, chain) in enumerate(run, start=1):
        if step > len(params.schedule):
            break
        chain = list(chain)
        lt, rt = params.schedule[step - 1]
        coloring = sided_coloring(frame, i, chain)
        try:
            color, seq = transitive_clique(coloring, lt, max(rt, 2))
        except NotFound as exc:
            raise ScheduleMiss(f"region {i}: {exc}") from exc
        trace.append({"step": "schedule", "region": i, "targets": [lt, rt], "found": color.value})
        if color is Color.BLUE:
            right = _sided(frame, i, chain, seq, Side.RIGHT)
            if prev_left is None:
                w = ConvexWitness(right.indices)
            else:
                w = glue(frame.S, prev_left, right)
            trace.extend(w.trace)
            trace.append({"step": "result", "rule": "Case2", "size": w.size})
            return ConvexWitness(w.indices, trace=trace)
        prev_left = _sided(frame, i, chain, seq, Side.LEFT)
        if len(prev_left) >= params.n:
            trace.append({"step": "result", "rule": "Case2", "size": len(prev_left)})
            return ConvexWitness(prev_left.indices[:params.n], trace=trace)
    raise ScheduleMiss(f"schedule of {len(params.schedule)} regions not completed over a run of {len(run)}")


def _verify_or_raise(S, w: ConvexWitness):
    if not verify_witness(S, w):
        raise VerificationFailed(f"witness {w.indices} failed verification")


def _longest_chain_run(tagged: dict[int, ChainAntichain]) -> list[int]:
    best: list[int] = []
    cur: list[int] = []
    for i in sorted(tagged):
        ca = tagged[i]
        if ca.kind is Tag.CHAIN and len(ca) > 0 and (not cur or i == cur[-1] + 1):
            cur.append(i)
        elif ca.kind is Tag.CHAIN and len(ca) > 0:
            cur = [i]
        else:
            cur = []
        if len(cur) > len(best):
            best = list(cur)
    return best


def extract(S, n: int, mode: Mode = Mode.BEST_EFFORT, seed: int = 0, region_fraction_exponent: int = 32,
            budget: int = DEFAULT_CANDIDATE_BUDGET) -> ConvexWitness:
    """Find a large subset in convex position, following the two-case argument.

    STRICT raises :class:`ThresholdUnmet` unless the input is large enough
    for the argument's guarantees.  BEST_EFFORT always returns a verified
    witness at least as large as the longest cup or cap.
    """
    S = as_pointset(S)
    N = len(S)
    params = params_for(n, mode, region_fraction_exponent)
    trace: list[dict] = [{"step": "params", **params.to_dict(), "N": N}]
    if mode is Mode.STRICT and not params.meets_threshold(N):
        raise ThresholdUnmet(
            f"N = {N} is below 2^(n + 6 n^(2/3) log n) for n = {n} "
            f"(needs log2 N >= {float(params.required_log2_upper):.1f})",
            required_log2=params.required_log2_upper, actual=N,
        )
    table = CupCapTable(S)
    floor_cup, floor_cap = table.longest(Kind.CUP), table.longest(Kind.CAP)
    floor = floor_cup if len(floor_cup) >= len(floor_cap) else floor_cap
    trace.append({"step": "floor", "cup": len(floor_cup), "cap": len(floor_cap)})
    candidates: list[ConvexWitness] = []
    if mode is Mode.BEST_EFFORT:
        candidates.append(ConvexWitness(floor.indices, trace=[{"step": "result", "rule": "DP", "kind": floor.kind.value}]))
    k = params.k
    if mode is Mode.BEST_EFFORT:
        k = min(k, len(floor) - 3)
        if k != params.k:
            trace.append({"step": "adapt_k", "k": k})
    if k >= 1:
        try:
            pipeline_witness = _run_cases(S, params, k, mode, table, budget, seed, trace)
            candidates.append(pipeline_witness)
            trace.append({"step": "pipeline_result", "size": pipeline_witness.size})
        except (NotFound, Insufficient, ScheduleMiss) as exc:
            if mode is Mode.STRICT:
                raise
            trace.append({"step": "pipeline_stopped", "reason": f"{type(exc).__name__}: {exc}"})
    if not candidates:
        raise ScheduleMiss("no witness produced")
    best = max(candidates, key=lambda w: w.size)
    _verify_or_raise(S, best)
    return ConvexWitness(best.indices, trace=trace + best.trace)


def _run_cases(S, params, k, mode, table, budget, seed, trace) -> ConvexWitness:
    threshold = params.region_threshold(len(S))
    fc = find_fractional_cap(S, k, threshold, mode, table=table, budget=budget, seed=seed)
    trace.append({
        "step": "fractional_cap", "kind": fc.X.kind.value, "X": list(fc.frame.xs),
        "reflected": fc.frame.reflected, "occupancies": fc.occupancies,
        "threshold": str(threshold), "meets_threshold": fc.meets_threshold,
        "candidates": fc.candidates_evaluated,
    })
    tagged = dilworth_regions(fc.frame, fc.regions, params.alpha)
    trace.append({
        "step": "dilworth", "alpha": str(params.alpha), "alpha_clamped": params.alpha_clamped,
        "regions": {str(i): {"tag": ca.kind.value, "size": len(ca), "bound": ca.bound,
                             "region_size": len(fc.regions[i - 1])} for i, ca in tagged.items()},
    })
    anti = [i for i, ca in tagged.items() if ca.kind is Tag.ANTICHAIN]
    if len(select_nonadjacent(anti)) >= params.t:
        trace.append({"step": "case", "case": 1})
        return case1_assemble(fc.frame, tagged, params, mode)
    trace.append({"step": "case", "case": 2})
    run = _longest_chain_run(tagged)
    if mode is Mode.STRICT and len(run) < params.steps:
        raise ScheduleMiss(f"longest run of chain regions is {len(run)}, need {params.steps}")
    return case2_iterate(fc.frame, [(i, tagged[i].members) for i in run], params, mode)
