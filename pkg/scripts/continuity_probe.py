"""Valuations of successive L-value gaps along j_n = j + (p-1)p^n."""

import argparse

from padic_ms.lfun import continuity_probe, generate_orbit, weight_sequence


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--prime", type=int, default=5)
    parser.add_argument("--precision", type=int, default=20)
    parser.add_argument("--k", type=int, default=2)
    parser.add_argument("--j", type=int, default=0)
    parser.add_argument("--points", type=int, default=3)
    parser.add_argument("--steps", type=int, default=6)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    for kind in ("ordinary", "inert", "ramified"):
        orbit, chi = generate_orbit(args.prime, args.precision, args.k, args.points, kind=kind,
                                    seed=args.seed, j=args.j)
        report = continuity_probe(orbit, [chi.with_j(j) for j in weight_sequence(chi.j, args.steps)])
        gaps = ", ".join(str(g) for g in report.gap_valuations)
        print(f"{kind:>9}: gaps [{gaps}]  cauchy={report.cauchy}")


if __name__ == "__main__":
    main()
