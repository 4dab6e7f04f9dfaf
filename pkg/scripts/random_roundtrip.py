#!/usr/bin/env python3
"""Round-trip experiment: simulate random paths, rewind, compare.

Walks random irreducible pairs until the winner sequence has as many
complete stretches as the uniqueness threshold demands, then reports how
often recovery settles and whether it ever disagrees with the start.
"""
from __future__ import annotations

import argparse
import random
import sys
from collections import defaultdict

from ietrewind.core import inverse, is_irreducible_pair, make_pair
from ietrewind.rauzy import c_completeness, rauzy_step_pair, simulate_pair
from ietrewind.recovery import recover_pair, uniqueness_threshold


def random_pair(rng, n):
    row1 = list(range(1, n + 1))
    while True:
        rng.shuffle(row1)
        cand = make_pair(tuple(range(1, n + 1)), tuple(row1))
        if is_irreducible_pair(cand):
            return cand


def walk(start, rng, target):
    state, types, winners = start, [], []
    while True:
        t = rng.randint(0, 1)
        state, _, record = rauzy_step_pair(state, t)
        types.append(t)
        winners.append(record.winner)
        if c_completeness(winners, start.alphabet)[0] >= target:
            return types


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--min-n", type=int, default=3)
    parser.add_argument("--max-n", type=int, default=9)
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    lengths = defaultdict(list)
    settled = defaultdict(int)
    mismatches = 0
    for _ in range(args.trials):
        n = rng.randint(args.min_n, args.max_n)
        start = random_pair(rng, n)
        types = walk(start, rng, uniqueness_threshold(n))
        path = simulate_pair(start, types)
        pop, _ = recover_pair(path.moves, alphabet=start.alphabet)
        lengths[n].append(len(types))
        if pop.is_settled():
            settled[n] += 1
            if pop.settled_pair() not in (start, inverse(start)):
                mismatches += 1

    print(f"{'n':>3} {'trials':>7} {'settled':>8} {'avg moves':>10}")
    for n in sorted(lengths):
        runs = lengths[n]
        print(f"{n:>3} {len(runs):>7} {settled[n]:>8} {sum(runs) / len(runs):>10.1f}")
    print(f"mismatches: {mismatches}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
