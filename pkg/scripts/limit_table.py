"""Print the table |theta^(j0 + (p-1)p^m) f - theta^j0 f_stab| for random series."""

import argparse
import random

from padic_ms.operator import OperatorParams, limit_sequence
from padic_ms.padic import Qp
from padic_ms.series import MONOMIAL_Q, TruncatedSeries


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7])
    parser.add_argument("--precision", type=int, default=20)
    parser.add_argument("--order", type=int, default=30)
    parser.add_argument("--series", type=int, default=3, help="random series per prime")
    parser.add_argument("--k", type=int, default=2)
    parser.add_argument("--m-max", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    print(f"{'p':>3} {'#':>3} {'j0':>3} " + " ".join(f"m={m:<3}" for m in range(args.m_max + 1)))
    for p in args.primes:
        R = Qp(p, args.precision)
        params = OperatorParams(args.k, R.zero())
        for idx in range(args.series):
            f = TruncatedSeries(R, MONOMIAL_Q, tuple(rng.randrange(p**6) for _ in range(args.order + 1)))
            for j0 in (0, 1, 2):
                table = limit_sequence(f, j0, params, args.m_max)
                gaps = " ".join(f"{str(row.gap_valuation):<5}" for row in table.rows)
                print(f"{p:>3} {idx:>3} {j0:>3} {gaps}")
    print("entries are valuations of the gap; the bound is m + 1")


if __name__ == "__main__":
    main()
