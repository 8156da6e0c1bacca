#!/usr/bin/env python3
"""Compare the closed-form Christoffel tables (both printed normalizations)
against the first-principles Gram-solve oracle and print the largest
disagreements."""

import argparse

from wcircle import TrigPoly, make_density, uniform_density
from wcircle.connection import christoffel_comparison_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--density", default="cos1:0.1",
                    help='"uniform" or "cos1:EPS"')
    ap.add_argument("--order", type=int, default=4)
    ap.add_argument("--top", type=int, default=12)
    args = ap.parse_args()

    if args.density == "uniform":
        mu = uniform_density()
    else:
        mu = make_density(TrigPoly.basis("cos", 1, float(args.density.split(":")[1])))

    for variant in ("as_printed", "proof_normalization"):
        rep = christoffel_comparison_report(mu, args.order, variant)
        print(f"\nvariant = {variant}: max |closed - oracle| = "
              f"{rep['max_abs']:.6e}, oracle tail estimate "
              f"{rep['tail_estimate']:.3e}")
        worst = sorted(rep["entries"], key=lambda e: -e["diff"])[: args.top]
        print(f"{'k':>4} {'i':>4} {'j':>4}  {'closed form':>14} "
              f"{'oracle':>14} {'diff':>12}")
        for e in worst:
            print(f"{e['k']:>4} {e['i']:>4} {e['j']:>4}  {e['paper']:14.6g} "
                  f"{e['oracle']:14.6g} {e['diff']:12.4g}")


if __name__ == "__main__":
    main()
