"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 parse/format, 3 general position,
4 strict threshold unmet, 5 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import constructions
from .cupcap import find_cup_or_cap
from .errors import DegenerateInput, NotFound, ThresholdUnmet
from .formats import (
    FormatError,
    format_pointset,
    pointset_hash,
    read_pointset,
    read_witness,
    write_pointset,
    write_witness,
)
from .geometry import PointSet, find_collinear_triple
from .oracle import contains_convex_ngon, largest_convex_subset, verify_witness
from .pipeline import Mode, extract
from .plot import render_svg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_GENERAL_POSITION = 3
EXIT_THRESHOLD = 4
EXIT_VERIFY = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path, require_general_position: bool = True) -> PointSet:
    try:
        S = read_pointset(path)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    if require_general_position:
        triple = find_collinear_triple(S)
        if triple is not None:
            pts = [tuple(S.points[i]) for i in triple]
            raise DegenerateInput(f"{path}: points {triple} {pts} are collinear", triple=triple)
    return S


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "random":
        if args.n is None or args.seed is None:
            raise UsageError("--kind random needs --n and --seed")
        spec = constructions.GeneratorSpec(kind, n=args.n, seed=args.seed, coord_range=args.range)
    elif kind in ("parabola", "es-lower"):
        if args.n is None:
            raise UsageError(f"--kind {kind} needs --n")
        spec = constructions.GeneratorSpec(kind, n=args.n)
    else:
        if args.k is None or args.l is None:
            raise UsageError("--kind cupcap-extremal needs --k and --l")
        spec = constructions.GeneratorSpec(kind, k=args.k, l=args.l)
    try:
        S = constructions.generate(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    meta = spec.metadata()
    comments = [json.dumps(meta, sort_keys=True)]
    if args.out:
        write_pointset(S, args.out, comments)
    else:
        sys.stdout.write(format_pointset(S, comments))
    print(f"generated {len(S)} points {json.dumps(meta, sort_keys=True)}", file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def _rule_and_case(w) -> tuple[str, object]:
    rule = next((s.get("rule") for s in reversed(w.trace) if s.get("step") == "result"), "?")
    case = next((s.get("case") for s in w.trace if s.get("step") == "case"), None)
    return rule, case


def cmd_extract(args) -> int:
    S = _load(args.input)
    mode = Mode(args.mode)
    try:
        w = extract(S, args.target, mode, seed=args.seed, region_fraction_exponent=args.fraction_exponent)
    except ThresholdUnmet as exc:
        print(f"ThresholdUnmet: {exc}", file=sys.stderr)
        return EXIT_THRESHOLD
    if not verify_witness(S, w):
        print("witness failed verification", file=sys.stderr)
        return EXIT_VERIFY
    rule, case = _rule_and_case(w)
    params = {"target": args.target, "mode": mode.value, "seed": args.seed,
              "region_fraction_exponent": args.fraction_exponent}
    if args.trace:
        write_witness(S, w, args.trace, params)
    print(f"size {w.size} (rule {rule}, case {case if case is not None else '-'})")
    return EXIT_OK


def cmd_oracle(args) -> int:
    S = _load(args.input)
    if args.ngon is not None:
        try:
            w = contains_convex_ngon(S, args.ngon)
        except NotFound as exc:
            print(f"NotFound: {exc}")
            return EXIT_OK
        print(f"found {args.ngon} points in convex position: {list(w.indices)}")
    else:
        w = largest_convex_subset(S)
        print(f"largest convex subset: {w.size}")
        print(f"indices: {list(w.indices)}")
    if args.out:
        write_witness(S, w, args.out, {"command": "oracle", "ngon": args.ngon})
    return EXIT_OK


def cmd_cupcap(args) -> int:
    S = _load(args.input)
    try:
        c = find_cup_or_cap(S, args.k, args.l)
    except NotFound as exc:
        print(f"NotFound: {exc}")
        return EXIT_OK
    print(f"{c.kind.value} of {len(c)}: {list(c.indices)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    S = _load(args.points, require_general_position=False)
    w, rec = read_witness(args.witness)
    expected = rec.get("pointset", {}).get("sha256")
    if expected is not None and expected != pointset_hash(S):
        print("witness was recorded for a different point set (hash mismatch)", file=sys.stderr)
        return EXIT_VERIFY
    if verify_witness(S, w):
        print(f"ok: {w.size} points in convex position")
        return EXIT_OK
    print("invalid witness", file=sys.stderr)
    return EXIT_VERIFY


def cmd_plot(args) -> int:
    S = _load(args.input, require_general_position=False)
    witness = trace = None
    if args.witness:
        w, rec = read_witness(args.witness)
        witness, trace = list(w.indices), w.trace
    try:
        svg = render_svg(S, witness, trace, title=S.id)
    except IndexError as exc:
        raise FormatError(str(exc)) from exc
    Path(args.out).write_text(svg)
    print(f"wrote {args.out}")
    return EXIT_OK


def _bench_one(job):
    n_points, target, seed, coord_range = job
    S = constructions.random_general_position(n_points, coord_range, seed)
    w = extract(S, target, Mode.BEST_EFFORT, seed=seed)
    return seed, w.size, verify_witness(S, w), _rule_and_case(w)[0]


def cmd_bench(args) -> int:
    jobs = [(args.n, args.target, s, args.range) for s in range(args.seed, args.seed + args.trials)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_one, jobs))  # map keeps submission order
    else:
        results = [_bench_one(j) for j in jobs]
    failed = 0
    for seed, size, ok, rule in results:
        print(f"seed {seed}: size {size} rule {rule} {'verified' if ok else 'FAILED'}")
        failed += not ok
    sizes = [r[1] for r in results]
    print(f"trials {len(results)} min {min(sizes)} max {max(sizes)} failed {failed}")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="espoints", description="Convex subsets of planar point sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a point set")
    g.add_argument("--kind", required=True, choices=["random", "parabola", "cupcap-extremal", "es-lower"])
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--l", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--range", type=int, default=constructions.FAST_COORD_LIMIT)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("extract", help="find a large convex subset")
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--target", type=int, required=True)
    e.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.BEST_EFFORT.value)
    e.add_argument("--seed", type=int, required=True)
    e.add_argument("--fraction-exponent", type=int, default=32)
    e.add_argument("--trace", "--out", dest="trace", help="write the witness record here")
    e.set_defaults(func=cmd_extract)

    o = sub.add_parser("oracle", help="exact largest convex subset")
    o.add_argument("--in", dest="input", required=True)
    o.add_argument("--ngon", type=int)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    c = sub.add_parser("cupcap", help="search for a k-cup or an l-cap")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--l", type=int, required=True)
    c.set_defaults(func=cmd_cupcap)

    v = sub.add_parser("verify", help="re-check a witness file")
    v.add_argument("--points", required=True)
    v.add_argument("--witness", required=True)
    v.set_defaults(func=cmd_verify)

    pl = sub.add_parser("plot", help="write an SVG figure")
    pl.add_argument("--in", dest="input", required=True)
    pl.add_argument("--witness")
    pl.add_argument("--out", required=True)
    pl.set_defaults(func=cmd_plot)

    b = sub.add_parser("bench", help="best-effort extraction over seeded random sets")
    b.add_argument("--n", type=int, required=True, help="points per set")
    b.add_argument("--target", type=int, default=8)
    b.add_argument("--trials", type=int, default=10)
    b.add_argument("--seed", type=int, required=True, help="first seed")
    b.add_argument("--range", type=int, default=constructions.FAST_COORD_LIMIT)
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegenerateInput as exc:
        print(f"not in general position: {exc}", file=sys.stderr)
        return EXIT_GENERAL_POSITION


if __name__ == "__main__":
    sys.exit(main())
