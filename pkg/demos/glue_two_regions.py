"""Gluing a left-cap and a right-cap from neighbouring regions.

Random points are planted in two adjacent regions beyond a 6-point cap.
Inside each region we keep the longest chain of the region order, color
its triples, and take the longest left-cap from the first region and the
longest right-cap from the second.  Their union is in convex position.

Writes glue.svg next to this script.
"""

from pathlib import Path

from espoints.oracle import verify_witness
from espoints.pipeline import Side, glue
from espoints.planted import best_sided_cap, planted_regions, region_chain
from espoints.plot import render_svg


def main(seed: int = 9):
    planted = planted_regions(6, {2: 12, 3: 12}, seed)
    S = planted.frame.S
    for i in (2, 3):
        print(f"region {i}: {len(planted.members[i])} points, chain of {len(region_chain(planted, i))}")
    left = best_sided_cap(planted, 2, Side.LEFT)
    right = best_sided_cap(planted, 3, Side.RIGHT)
    w = glue(S, left, right)
    print(f"left-cap {len(left)} + right-cap {len(right)} -> {w.size} points, verified {verify_witness(S, w)}")
    trace = [{"step": "fractional_cap", "X": list(planted.frame.xs)}]
    out = Path(__file__).with_name("glue.svg")
    out.write_text(render_svg(S, list(w.indices), trace, title=f"planted seed {seed}"))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
