"""Monte Carlo sweep over every weight k, compared with the exact success probabilities.

    python scripts/monte_carlo_sweep.py --n 20 --task weight --trials 100000 --seed 1
    python scripts/monte_carlo_sweep.py --n 6 --mode statevector --trials 10000
"""
import argparse

from hiddenbasis.exact import to_decimal
from hiddenbasis.simulate import sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--n", type=int, default=20)
    parser.add_argument("--task", choices=("weight", "threshold", "parity"), default="weight")
    parser.add_argument("--t", type=int, default=1)
    parser.add_argument("--trials", type=int)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--mode", choices=("exact", "statevector"), default="exact")
    args = parser.parse_args()

    reports = sweep(args.n, args.task, args.trials, args.seed, args.mode, args.t if args.task == "threshold" else None)
    print(f"{'k':>3} {'rate':>9} {'theory':>15} {'stderr':>9} {'z':>7}")
    for r in reports:
        print(f"{r.k:3d} {r.rate:9.5f} {to_decimal(r.theory):>15} {r.stderr:9.5f} {r.z:7.2f}")
    print(f"max |z| = {max(abs(r.z) for r in reports):.2f}")


if __name__ == "__main__":
    main()
