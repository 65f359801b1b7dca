"""The 2^(n-2)-point sets with no convex n-gon.

Blocks without long cups or caps are strung along a steep convex curve.
A convex polygon may take a cup from the first block it uses, a cap from
the last, and one point from each block between, which never adds up to n.
"""

import time

from espoints.constructions import es_lower_bound_set
from espoints.errors import NotFound
from espoints.oracle import contains_convex_ngon, largest_convex_subset


def main():
    for n in range(4, 10):
        S = es_lower_bound_set(n)
        t = time.perf_counter()
        best = largest_convex_subset(S)
        try:
            contains_convex_ngon(S, n)
            verdict = "found (unexpected)"
        except NotFound:
            verdict = "none"
        print(f"n={n:2d}: {len(S):4d} points, largest convex subset {best.size}, "
              f"convex {n}-gon: {verdict} ({time.perf_counter() - t:.2f}s)")


if __name__ == "__main__":
    main()
