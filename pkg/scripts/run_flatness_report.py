#!/usr/bin/env python3
"""Measure the curvature of the Wasserstein space of the circle two ways and
print the verdict on the flatness claim."""

import argparse
import json

from wcircle import TrigPoly, make_density, uniform_density
from wcircle.cli import _Encoder
from wcircle.curvature import flatness_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=4)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="optional JSON output path")
    args = ap.parse_args()

    for name, mu in [("uniform", uniform_density()),
                     ("cos1:0.1", make_density(TrigPoly.basis("cos", 1, 0.1)))]:
        rep = flatness_report(mu, args.order, n_oracle_samples=args.samples,
                              seed=args.seed)
        print(f"\nbase density: {name}")
        print(f"  max |curvature| over all order-{args.order} quadruples: "
              f"{rep.max_abs_formula:.6g}")
        print(f"  max |formula - fd oracle| on {args.samples} samples: "
              f"{rep.max_abs_disagreement:.3e}")
        print(f"  verdict: {rep.verdict}")
        if args.out:
            path = f"{args.out.rstrip('/')}/curvature_{name.replace(':', '_')}.json"
            with open(path, "w") as fh:
                json.dump(rep.to_json_dict(), fh, indent=2, cls=_Encoder)
            print(f"  wrote {path}")


if __name__ == "__main__":
    main()
