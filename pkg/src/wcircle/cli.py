"""Batch command-line front-end.

Reads density and potential coefficients from JSON, runs one module's
computation, writes CSV/JSON artifacts.  Every failure exits nonzero with a
machine-readable error JSON on stderr.  Floats are serialized with 17
significant digits so outputs round-trip exactly.
"""

from __future__ import annotations

import argparse
import json
import json.encoder
import sys
from pathlib import Path

import numpy as np

from .config import SpectralConfig, default_grid_size
from .connection import christoffel_comparison_report
from .curvature import flatness_report
from .errors import ConfigInvalid, WCircleError
from .geodesic import exp_velocity, geodesic_evolve, shock_time
from .measure import Density, make_density, uniform_density
from .metric import gram, metric_discrepancy_report
from .connection import bracket_potential, bracket_potential_hessian_route
from .transport import w2_circle
from .trigpoly import TrigPoly, derivative

__all__ = ["main"]


class _Encoder(json.JSONEncoder):
    """JSON encoder printing every float with 17 significant digits."""

    def iterencode(self, o, _one_shot=False):
        markers = {} if self.check_circular else None

        def floatstr(x, allow_nan=self.allow_nan,
                     _inf=json.encoder.INFINITY, _neginf=-json.encoder.INFINITY):
            if x != x:
                return "NaN"
            if x == _inf:
                return "Infinity"
            if x == _neginf:
                return "-Infinity"
            return format(x, ".17g")

        it = json.encoder._make_iterencode(
            markers, self.default, json.encoder.py_encode_basestring_ascii,
            self.indent, floatstr, self.key_separator, self.item_separator,
            self.sort_keys, self.skipkeys, False)
        return it(o, 0)


def _dump_json(obj, path: Path):
    path.write_text(json.dumps(obj, indent=2, cls=_Encoder) + "\n")


def load_density(spec: str, config: SpectralConfig) -> Density:
    """Resolve a density argument: a built-in name or a JSON file path.

    Built-ins: "uniform"; "cos1:eps" for a1 = eps; "bump:eps,m" for a_m = eps.
    """
    if spec == "uniform":
        return uniform_density()
    if spec.startswith("cos1:"):
        eps = float(spec[len("cos1:"):])
        return make_density(TrigPoly.basis("cos", 1, eps), config)
    if spec.startswith("bump:"):
        eps_s, m_s = spec[len("bump:"):].split(",")
        return make_density(TrigPoly.basis("cos", int(m_s), float(eps_s)), config)
    p = Path(spec)
    if not p.is_file():
        raise ConfigInvalid(f"density {spec!r} is neither a built-in name nor a file",
                            operation="load_density", spec=spec)
    return make_density(load_poly(spec), config)


def load_poly(path: str) -> TrigPoly:
    p = Path(path)
    if not p.is_file():
        raise ConfigInvalid(f"no such file: {path}", operation="load_poly", path=path)
    try:
        return TrigPoly.from_json_dict(json.loads(p.read_text()))
    except (ValueError, KeyError, TypeError) as e:
        raise ConfigInvalid(f"bad coefficient JSON in {path}: {e}",
                            operation="load_poly", path=path) from e


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _make_config(args) -> SpectralConfig:
    M = getattr(args, "grid", None) or default_grid_size()
    return SpectralConfig(grid_size=int(M))


def _cmd_metric(args):
    config = _make_config(args)
    mu = load_density(args.density, config)
    out = _out_dir(args)
    G = gram(mu, args.order)
    (out / "gram.csv").write_text(G.to_csv())
    report = metric_discrepancy_report(mu, args.order)
    flagged = [e for e in report["entries"] if e["diff"] > 1e-10]
    report["flagged"] = flagged
    _dump_json(report, out / "metric_report.json")
    print(f"wrote {out / 'gram.csv'} and metric_report.json "
          f"(max |quadrature - closed form| = {report['max_abs']:.3e}, "
          f"{len(flagged)} flagged entries)")
    return 0


def _cmd_christoffel(args):
    config = _make_config(args)
    mu = load_density(args.density, config)
    out = _out_dir(args)
    report = christoffel_comparison_report(mu, args.order, variant=args.variant)
    _dump_json(report, out / "christoffel.json")
    print(f"wrote {out / 'christoffel.json'} "
          f"(max |closed form - oracle| = {report['max_abs']:.3e}, "
          f"oracle tail estimate {report['tail_estimate']:.3e})")
    return 0


def _cmd_bracket(args):
    config = _make_config(args)
    mu = load_density(args.density, config)
    phi1 = load_poly(args.phi1).meanfree()
    phi2 = load_poly(args.phi2).meanfree()
    out = _out_dir(args)
    theta = bracket_potential(mu, phi1, phi2, config)
    alt = bracket_potential_hessian_route(mu, phi1, phi2, config)
    diff = float(max((theta - alt).coeff_norm(), 0.0))
    _dump_json({"bracket": theta.to_json_dict(),
                "hessian_route": alt.to_json_dict(),
                "route_coeff_difference": diff}, out / "bracket.json")
    print(f"wrote {out / 'bracket.json'} (route difference {diff:.3e})")
    return 0


def _trajectory_csv(path) -> str:
    n_rho = max(st[0].rho.degree for st in path.states)
    n_psi = max(st[1].degree for st in path.states)
    cols = (["t"]
            + [f"rho_a{n}" for n in range(n_rho + 1)]
            + [f"rho_b{n}" for n in range(1, n_rho + 1)]
            + [f"psi_a{n}" for n in range(n_psi + 1)]
            + [f"psi_b{n}" for n in range(1, n_psi + 1)])
    lines = [",".join(cols)]
    for t, (rho, psi) in zip(path.times, path.states):
        r = rho.rho.pad_to(n_rho)
        p = psi.pad_to(n_psi)
        row = np.concatenate([[t], r.cos_coeffs, r.sin_coeffs,
                              p.cos_coeffs, p.sin_coeffs])
        lines.append(",".join(format(x, ".17g") for x in row))
    return "\n".join(lines) + "\n"


def _cmd_geodesic(args):
    config = _make_config(args)
    mu = load_density(args.density, config)
    psi = load_poly(args.potential).meanfree()
    out = _out_dir(args)
    if args.t_end == 0.0:
        # degenerate single-point path equal to the input
        from .geodesic import GeodesicPath
        bound = shock_time(derivative(psi), config)
        path = GeodesicPath(np.array([0.0]), ((mu, psi),),
                            bound if np.isfinite(bound) else np.inf)
    else:
        path = geodesic_evolve(mu, psi, args.t_end, args.steps, config)
    (out / "trajectory.csv").write_text(_trajectory_csv(path))
    _dump_json({"t_end": args.t_end, "steps": args.steps,
                "shock_time_bound": path.shock_time_bound,
                "hj_residual_max": path.hj_residual},
               out / "geodesic_report.json")
    print(f"wrote {out / 'trajectory.csv'} and geodesic_report.json "
          f"(HJ residual {path.hj_residual:.3e}, "
          f"shock bound {path.shock_time_bound:g})")
    return 0


def _cmd_expmap(args):
    config = _make_config(args)
    mu = load_density(args.density, config)
    psi = load_poly(args.potential).meanfree()
    out = _out_dir(args)
    nu = exp_velocity(mu, derivative(psi), args.t, config)
    _dump_json(nu.to_json_dict(), out / "expmap_density.json")
    print(f"wrote {out / 'expmap_density.json'}")
    return 0


def _cmd_distance(args):
    config = _make_config(args)
    mu = load_density(args.density, config)
    nu = load_density(args.density2, config)
    d = w2_circle(mu, nu, args.atoms)
    print(json.dumps({"w2": d, "atoms": args.atoms}, cls=_Encoder))
    return 0


def _cmd_curvature(args):
    config = _make_config(args)
    mu = load_density(args.density, config)
    out = _out_dir(args)
    report = flatness_report(mu, args.order, n_oracle_samples=args.samples,
                             seed=args.seed, config=config)
    _dump_json(report.to_json_dict(), out / "curvature_report.json")
    print(f"wrote {out / 'curvature_report.json'}")
    print(report.verdict)
    return 0


def _cmd_validate(args):
    config = _make_config(args)
    mu = load_density(args.density, config)
    print(json.dumps({"valid": True, "N": mu.degree,
                      "min_density": float(np.min(
                          mu.rho.eval(np.linspace(0, 2 * np.pi, 4096,
                                                  endpoint=False))))},
                     cls=_Encoder))
    return 0


def _cmd_selftest(args):
    from .selftest import run_selftest
    out = _out_dir(args)
    report = run_selftest(seed=args.seed)
    _dump_json(report, out / "selftest_report.json")
    n_fail = sum(1 for c in report["checks"] if not c["passed"])
    for c in report["checks"]:
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  "
              f"(measured {c['measured']:.3e}, tol {c['tolerance']:.3e})")
    print(f"wrote {out / 'selftest_report.json'}: "
          f"{len(report['checks']) - n_fail}/{len(report['checks'])} passed")
    # failing checks are report entries, not command failures
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wcircle",
        description="Spectral toolkit for the Wasserstein geometry of the circle")
    p.add_argument("--grid", type=int, default=None, metavar="M",
                   help="working grid size (power of two; default from WSC_GRID or 4096)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("metric", _cmd_metric, help="Gram matrix and discrepancy report")
    sp.add_argument("--density", required=True)
    sp.add_argument("--order", type=int, default=8, metavar="N")
    sp.add_argument("--out", default=".")

    sp = add("christoffel", _cmd_christoffel,
             help="closed-form vs oracle Christoffel tables")
    sp.add_argument("--density", required=True)
    sp.add_argument("--order", type=int, default=8, metavar="N")
    sp.add_argument("--variant", default="as_printed",
                    choices=["as_printed", "proof_normalization"])
    sp.add_argument("--out", default=".")

    sp = add("bracket", _cmd_bracket, help="Lie bracket of two constant fields")
    sp.add_argument("--density", required=True)
    sp.add_argument("--phi1", required=True)
    sp.add_argument("--phi2", required=True)
    sp.add_argument("--out", default=".")

    sp = add("geodesic", _cmd_geodesic, help="initial-value geodesic trajectory")
    sp.add_argument("--density", required=True)
    sp.add_argument("--potential", required=True)
    sp.add_argument("--t-end", type=float, required=True, dest="t_end")
    sp.add_argument("--steps", type=int, default=10)
    sp.add_argument("--out", default=".")

    sp = add("expmap", _cmd_expmap, help="pushforward by the gradient flow")
    sp.add_argument("--density", required=True)
    sp.add_argument("--potential", required=True)
    sp.add_argument("--t", type=float, default=1.0)
    sp.add_argument("--out", default=".")

    sp = add("distance", _cmd_distance, help="W2 distance between two densities")
    sp.add_argument("--density", required=True)
    sp.add_argument("--density2", required=True)
    sp.add_argument("--atoms", type=int, default=512, metavar="n")

    sp = add("curvature", _cmd_curvature, help="dual-path curvature report")
    sp.add_argument("--density", required=True)
    sp.add_argument("--order", type=int, default=4, metavar="N")
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=".")

    sp = add("validate", _cmd_validate, help="check a density JSON for validity")
    sp.add_argument("--density", required=True)

    sp = add("selftest", _cmd_selftest, help="run the full invariant suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=".")

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except WCircleError as e:
        print(json.dumps(e.to_dict(), cls=_Encoder), file=sys.stderr)
        return 1
    except ValueError as e:
        err = ConfigInvalid(str(e), operation=args.command)
        print(json.dumps(err.to_dict(), cls=_Encoder), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
