"""Estimate how often a Condorcet winner exists under impartial culture.

    python scripts/condorcet_frequency.py --candidates 3 4 5 10 20 --trials 20000
"""
import argparse
import time

from pordering.simulate import SimulationConfig, condorcet_winner_frequency


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--candidates", type=int, nargs="+", default=[3, 4, 5, 10, 20])
    parser.add_argument("--voters", type=int, default=1001)
    parser.add_argument("--trials", type=int, default=20000)
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    print(f"{'k':>3}  {'fraction':>9}  {'95% +/-':>8}  {'seconds':>7}")
    for k in args.candidates:
        start = time.perf_counter()
        est = condorcet_winner_frequency(SimulationConfig(k, args.voters, args.trials, args.seed), args.threads)
        print(f"{k:>3}  {est.fraction:>9.4f}  {est.half_width_95:>8.4f}  {time.perf_counter() - start:>7.1f}")


if __name__ == "__main__":
    main()
