"""Cups and caps at the threshold.

Random sets of size C(k+l-4, k-2) + 1 always hold a k-cup or an l-cap,
while the recursive extremal set one point smaller holds neither.
"""

import math

from espoints.constructions import extremal_cupcap_set, random_general_position
from espoints.cupcap import CupCapTable, Kind, find_cup_or_cap


def main():
    for k, l in [(4, 4), (4, 5), (5, 5), (5, 6)]:
        size = math.comb(k + l - 4, k - 2) + 1
        kinds = {Kind.CUP: 0, Kind.CAP: 0}
        for seed in range(200):
            found = find_cup_or_cap(random_general_position(size, 10**4, seed), k, l)
            kinds[found.kind] += 1
        E = extremal_cupcap_set(k, l)
        table = CupCapTable(E)
        print(f"k={k} l={l}: {size} random points -> {kinds[Kind.CUP]} cups, {kinds[Kind.CAP]} caps over 200 seeds")
        print(f"    extremal set of {len(E)}: longest cup {len(table.longest(Kind.CUP))}, "
              f"longest cap {len(table.longest(Kind.CAP))}")


if __name__ == "__main__":
    main()
