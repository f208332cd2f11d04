"""Sweep random elections and record where the p-ordering settles on Ranked Pairs.

For each matrix we trace p = 1..max_p and report the dominance threshold,
the closed-form bound, the first p from which the ordering never changes,
and whether Kemeny (p = 1) already agrees with Ranked Pairs.
"""
import argparse
import collections
import random

from pordering.convergence import cdp_threshold, convergence_profile
from pordering.core import random_margin_matrix


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--matrices", type=int, default=200)
    parser.add_argument("--min-n", type=int, default=3)
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--max-magnitude", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--show-splits", type=int, default=3, help="print this many Kemeny/Ranked Pairs splits")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    settled = collections.Counter()
    slack = []
    splits = 0
    for _ in range(args.matrices):
        matrix = random_margin_matrix(rng, rng.randint(args.min_n, args.max_n), args.max_magnitude)
        # trace a little past the threshold so the verdict is covered
        report = convergence_profile(matrix, cdp_threshold(matrix) + 2)
        assert report.agrees, matrix
        settled[report.stabilized_at] += 1
        slack.append(report.p_star_bound - report.cdp_threshold)
        if report.trace[0].ordering != report.ranked_pairs:
            splits += 1
            if splits <= args.show_splits:
                print("split:", " ".join(f"{i}{j}:{v}" for i, j, v in matrix.upper()),
                      "kemeny", "".join(matrix.names(report.trace[0].ordering)),
                      "ranked pairs", "".join(matrix.names(report.ranked_pairs)),
                      "flips at", report.flips)

    print(f"{args.matrices} matrices, Kemeny differs from Ranked Pairs in {splits}")
    print("stabilized at p:", dict(sorted(settled.items())))
    print(f"bound minus threshold: min {min(slack):.2f}, mean {sum(slack) / len(slack):.2f}, max {max(slack):.2f}")


if __name__ == "__main__":
    main()
