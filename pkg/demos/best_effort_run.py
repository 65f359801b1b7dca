"""One best-effort extraction on 4096 random points, step by step.

Prints the trace: the cups/caps floor, the cap chosen for its well-filled
support, the chain/antichain tag of each inner region, the branch taken,
and the final witness compared against the floor.
"""

import sys
import time

from espoints.constructions import random_general_position
from espoints.oracle import verify_witness
from espoints.pipeline import Mode, extract


def main(seed: int = 0, target: int = 8):
    S = random_general_position(4096, 2**20, seed)
    t = time.perf_counter()
    w = extract(S, target, Mode.BEST_EFFORT, seed=seed)
    elapsed = time.perf_counter() - t
    for step in w.trace:
        name = step["step"]
        if name == "params":
            print(f"params: k={step['k']} t={step['t']} alpha={step['alpha']} (clamped {step['alpha_clamped']})")
        elif name == "fractional_cap":
            print(f"cap of {len(step['X'])} ({step['kind']}), region occupancies {step['occupancies']}")
        elif name == "dilworth":
            tags = {i: f"{r['tag']}:{r['size']}/{r['region_size']}" for i, r in step["regions"].items()}
            print(f"regions: {tags}")
        else:
            print({k: v for k, v in step.items() if k not in ("left", "right")})
    print(f"size {w.size}, verified {verify_witness(S, w)}, {elapsed:.2f}s")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:]))
