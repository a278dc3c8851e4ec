"""Print the exact tables behind the headline results.

    python scripts/reproduce_tables.py --n-max 20
"""
import argparse
from fractions import Fraction

from hiddenbasis.exact import to_decimal
from hiddenbasis.inference import (
    optimal_worst_case_strategy,
    parity_algorithm,
    standard_strategy,
    threshold_two_sided,
    worst_case_success,
)
from hiddenbasis.sampling import (
    ASYMPTOTIC_AVERAGE_SUCCESS,
    average_success_uniform,
    distinguish_bound,
    success_standard,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--n-max", type=int, default=20)
    args = parser.parse_args()

    print("# weight reconstruction, n = 20")
    for k in range(11):
        s = success_standard(20, k)
        print(f"k={k:2d}  Pr[k|k] = {str(s):>6}  {to_decimal(s)}")

    print("\n# uniform-prior average success")
    for n in (4, 10, 100, 1000):
        print(f"n={n:5d}  {to_decimal(average_success_uniform(n))}")
    print(f"limit  {ASYMPTOTIC_AVERAGE_SUCCESS:.12f}")

    print("\n# worst-case weight reconstruction: standard <= LP optimum <= distinguishing bound")
    for n in range(2, args.n_max + 1):
        _, t_star = optimal_worst_case_strategy(n)
        lower = worst_case_success(standard_strategy(n), n)
        upper = min(distinguish_bound(n, k) for k in range(n // 2))
        print(f"n={n:3d}  {to_decimal(lower):>15}  {str(t_star):>18} = {to_decimal(t_star):<15}  {to_decimal(upper)}")

    print("\n# two-sided threshold and parity (worst case)")
    for n in (4, 8, 16, 32):
        th = [threshold_two_sided(n, t).success for t in range(1, n // 2 + 1)]
        par = parity_algorithm(n).success
        bound = Fraction(1, 2) + Fraction(1, 2 * (n + 1))
        print(f"n={n:3d}  threshold t=1..n/2: {' '.join(map(str, th))}")
        print(f"       parity {par} (bound {bound})")


if __name__ == "__main__":
    main()
