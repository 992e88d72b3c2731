"""Command-line entry points and serialization.

Subcommands
-----------
exact      sample the zero-gravity wave family
solve      one Newton solve at (A, G)
continue   gravity continuation from the exact wave
touching   bisection for the self-touching amplitude at fixed gravity
verify     run a verification suite over an amplitude grid

Outputs are static files (CSV profiles, JSON reports and coefficient sets,
SVG renderings); exit code 0 on success, 1 on numerical failure, 2 on a
usage or configuration error.  Flags override values from an optional flat
JSON config file; the DISKWAVE_OUT environment variable sets the default
output directory.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import exact as ex
from . import geometry as geo
from . import linear as lin
from . import solver as sol
from .errors import DiskwaveError
from .spectral import HolomorphicBoundaryFn

DEFAULTS = {
    "A": 0.44,
    "G": 0.0,
    "N": 128,
    "M": 512,
    "steps": 10,
    "tol": 1e-11,
    "out": None,
    "format": "csv,json,svg",
    "suite": "all",
    "A_grid": "0.1,0.25,0.4",
}


# ---------------------------------------------------------------- writers


def _outdir(cfg) -> str:
    out = cfg.get("out") or os.environ.get("DISKWAVE_OUT") or "."
    os.makedirs(out, exist_ok=True)
    return out


def _formats(cfg) -> set:
    fmts = {f.strip() for f in str(cfg["format"]).split(",") if f.strip()}
    bad = fmts - {"csv", "json", "svg"}
    if bad:
        raise ValueError(f"unknown output format(s): {sorted(bad)}")
    return fmts


def write_profile_csv(path: str, p: geo.ProfileCurve):
    xa = p.x_alpha()
    ya = p.y_alpha()
    with open(path, "w") as fh:
        fh.write("alpha,x,y,x_alpha,y_alpha\n")
        for row in zip(p.alpha, p.x, p.y, xa, ya):
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def write_profile_svg(path: str, p: geo.ProfileCurve, width: int = 720):
    """One period on [-pi, pi], equal axis scaling, no timestamps."""
    M = len(p)
    h = M // 2
    xs = np.concatenate([p.x[h:] - 2.0 * np.pi, p.x[: h + 1]])
    ys = np.concatenate([p.y[h:], p.y[: h + 1]])
    xmin, xmax = float(xs.min()), float(xs.max())
    ymin, ymax = float(ys.min()), float(ys.max())
    pad = 0.05 * max(xmax - xmin, ymax - ymin, 1e-9)
    xmin, xmax, ymin, ymax = xmin - pad, xmax + pad, ymin - pad, ymax + pad
    scale = width / (xmax - xmin)
    height = max(int(math.ceil((ymax - ymin) * scale)), 16)

    def sx(x):
        return (x - xmin) * scale

    def sy(y):
        return (ymax - y) * scale  # SVG y axis points down

    pts = " ".join(f"{sx(x):.4f},{sy(y):.4f}" for x, y in zip(xs, ys))
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if ymin < 0 < ymax:
        lines.append(
            f'<line x1="0" y1="{sy(0.0):.4f}" x2="{width}" y2="{sy(0.0):.4f}" '
            'stroke="#bbbbbb" stroke-width="1" stroke-dasharray="4 4"/>'
        )
    lines.append(
        f'<polyline points="{pts}" fill="none" stroke="#1f4e8c" stroke-width="1.5"/>'
    )
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def coefficients_record(w: HolomorphicBoundaryFn, params: ex.ParamSet) -> dict:
    return {
        "A": params.A,
        "G": params.G,
        "Omega": params.Omega,
        "B": params.Bernoulli,
        "N": w.N,
        "coeffs": [float(c) for c in w.coeffs],
    }


def load_coefficients(path: str):
    with open(path) as fh:
        rec = json.load(fh)
    w = HolomorphicBoundaryFn(np.array(rec["coeffs"], dtype=float))
    params = ex.ParamSet(A=rec["A"], G=rec["G"], Omega=rec["Omega"], Bernoulli=rec["B"])
    return w, params


def report_record(report: sol.NewtonReport) -> dict:
    return {
        "iterations": report.iterations,
        "residual_history": [float(r) for r in report.residual_history],
        "final_residual": report.final_residual,
        "stagnation_margin": report.stagnation_margin,
        "converged": report.converged,
    }


def intersection_record(rep: geo.IntersectionReport) -> dict:
    return {
        "count": rep.count,
        "classification": rep.classification,
        "min_gap": rep.min_gap,
        "locations": [
            {"alpha": a, "alpha_prime": ap, "x": x, "y": y}
            for a, ap, x, y in rep.locations
        ],
        "failures": [list(f) for f in rep.failures],
    }


def _dump(path: str, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------- commands


def cmd_exact(cfg) -> int:
    A, M = cfg["A"], cfg["M"]
    out = _outdir(cfg)
    fmts = _formats(cfg)
    profile = ex.profile_z_exact(A, M)
    params = ex.ParamSet.from_family(A)
    if "csv" in fmts:
        write_profile_csv(os.path.join(out, "exact_profile.csv"), profile)
    if "json" in fmts:
        _dump(os.path.join(out, "exact_params.json"), {
            "A": params.A, "G": params.G, "Omega": params.Omega, "B": params.Bernoulli,
            "crest_trough_height": geo.crest_trough_height(profile),
            "stagnation_margin": profile.stagnation_margin,
        })
    if "svg" in fmts:
        write_profile_svg(os.path.join(out, "exact_profile.svg"), profile)
    return 0


def cmd_solve(cfg) -> int:
    A, G, N, M, tol = cfg["A"], cfg["G"], cfg["N"], cfg["M"], cfg["tol"]
    out = _outdir(cfg)
    fmts = _formats(cfg)
    params = ex.ParamSet.from_family(A, G)
    w, report = sol.newton_solve(ex.crapper_w(A, N), params, M=M, tol=tol)
    if not report.converged:
        print(f"solve: Newton did not converge (residual {report.final_residual:.3e})",
              file=sys.stderr)
        return 1
    profile = geo.reconstruct_profile(w, M)
    if "json" in fmts:
        _dump(os.path.join(out, "solve_coefficients.json"), coefficients_record(w, params))
        _dump(os.path.join(out, "solve_report.json"), report_record(report))
    if "csv" in fmts:
        write_profile_csv(os.path.join(out, "solve_profile.csv"), profile)
    if "svg" in fmts:
        write_profile_svg(os.path.join(out, "solve_profile.svg"), profile)
    return 0


def cmd_continue(cfg) -> int:
    A, G, steps, N, M, tol = (cfg["A"], cfg["G"], cfg["steps"], cfg["N"], cfg["M"], cfg["tol"])
    out = _outdir(cfg)
    fmts = _formats(cfg)
    trace = sol.continue_in_G(A, G, steps, N=N, M=M, tol=tol)
    if "json" in fmts:
        _dump(os.path.join(out, "continue_trace.json"), {
            "direction": trace.direction,
            "steps": [
                {"params": {"A": params.A, "G": params.G,
                            "Omega": params.Omega, "B": params.Bernoulli},
                 "coeffs": [float(c) for c in w.coeffs],
                 "report": report_record(rep)}
                for params, w, rep in trace.steps
            ],
        })
    profile = geo.reconstruct_profile(trace.final_w, M)
    if "csv" in fmts:
        write_profile_csv(os.path.join(out, "continue_profile.csv"), profile)
    if "svg" in fmts:
        write_profile_svg(os.path.join(out, "continue_profile.svg"), profile)
    return 0


def cmd_touching(cfg) -> int:
    G, tol = cfg["G"], cfg["tol"]
    lo, hi = cfg["bracket"]
    out = _outdir(cfg)
    fmts = _formats(cfg)
    bis_tol = cfg.get("bisect_tol") or 1e-6
    result = geo.find_touching_A(G, (lo, hi), tol=bis_tol, N=cfg["N"], M=cfg["M"])
    if "json" in fmts:
        _dump(os.path.join(out, "touching_result.json"), {
            "G": G,
            "A_star": result.A,
            "report": intersection_record(result.report),
            "history": [[a, g] for a, g in result.history],
        })
    if "csv" in fmts:
        write_profile_csv(os.path.join(out, "touching_profile.csv"), result.profile)
    if "svg" in fmts:
        write_profile_svg(os.path.join(out, "touching_profile.svg"), result.profile)
    return 0


def _suite_exact(A_grid, M):
    results = []
    for A in A_grid:
        res = ex.verify_exact_identities(A, M)
        w = ex.crapper_w(A)
        params = ex.ParamSet.from_family(A)
        from .spectral import residual_F

        res["bernoulli_residual"] = residual_F(w, params, M).max_norm()
        surf = ex.stream_function(A, np.linspace(0, 2 * np.pi, 64, endpoint=False), 0.0)
        res["surface_psi"] = float(np.max(np.abs(surf.psi)))
        passed = res["bernoulli_residual"] < 1e-10 and res["surface_psi"] < 1e-10 and all(
            v < 1e-11 for k, v in res.items() if k not in ("bernoulli_residual", "surface_psi")
        )
        results.append({"A": A, "residuals": res, "passed": bool(passed)})
    return results


def _suite_linear(A_grid, N=64):
    results = []
    m0 = lin.assemble_L_matrix(0.0, 8)
    diag_err = float(np.max(np.abs(m0.entries - np.diag(np.arange(9) - 1.0))))
    results.append({
        "A": 0.0,
        "diagonal_error": diag_err,
        "kernel_note": "mode i*zeta lies in the kernel at A = 0; informational",
        "passed": bool(diag_err < 1e-12),
    })
    for A in A_grid:
        if A == 0.0:
            continue
        sv = lin.min_singular_value(lin.assemble_L_matrix(A, N))
        results.append({"A": A, "min_singular_value": sv, "passed": bool(sv > 1e-3)})
    return results


def _suite_lemmas(A_grid):
    results = []
    for A in A_grid:
        rep = lin.lemma_checks(A)
        results.append({
            "A": A,
            "max_abs_error": rep["max_abs_error"],
            "denominator_verdict": rep["denominator_verdict"],
            "elimination_verdict": rep["elimination_verdict"],
            "residue_p_at_0_in_unit_interval": rep["residue_p_at_0_in_unit_interval"],
            "passed": bool(rep["max_abs_error"] < 1e-10
                           and rep["residue_p_at_0_in_unit_interval"]),
        })
    return results


def cmd_verify(cfg) -> int:
    suite = cfg["suite"]
    A_grid = [float(a) for a in str(cfg["A_grid"]).split(",") if a.strip()]
    out = _outdir(cfg)
    report = {"suite": suite, "A_grid": A_grid, "results": {}}
    if suite in ("exact", "all"):
        report["results"]["exact"] = _suite_exact(A_grid, cfg["M"])
    if suite in ("linear", "all"):
        report["results"]["linear"] = _suite_linear(A_grid)
    if suite in ("lemmas", "all"):
        report["results"]["lemmas"] = _suite_lemmas(A_grid)
    passed = all(r["passed"] for group in report["results"].values() for r in group)
    report["passed"] = bool(passed)
    _dump(os.path.join(out, "verify_report.json"), report)
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if passed else 1


# ---------------------------------------------------------------- plumbing


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="diskwave", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, *names):
        if "A" in names:
            p.add_argument("--A", type=float, default=None, help="amplitude parameter")
        if "G" in names:
            p.add_argument("--G", type=float, default=None, help="gravity parameter")
        p.add_argument("--N", type=int, default=None, help="holomorphic mode count")
        p.add_argument("--M", type=int, default=None, help="grid size")
        p.add_argument("--tol", type=float, default=None, help="Newton tolerance")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--format", default=None, help="comma list of csv,json,svg")
        p.add_argument("--config", default=None, help="flat JSON config file")

    p = sub.add_parser("exact", help="sample the zero-gravity wave family")
    common(p, "A")
    p = sub.add_parser("solve", help="Newton solve at (A, G)")
    common(p, "A", "G")
    p = sub.add_parser("continue", help="gravity continuation from the exact wave")
    common(p, "A", "G")
    p.add_argument("--steps", type=int, default=None, help="continuation steps")
    p = sub.add_parser("touching", help="bisection for the touching amplitude")
    common(p, "G")
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"), required=True)
    p.add_argument("--bisect-tol", type=float, default=None, dest="bisect_tol",
                   help="bisection bracket width")
    p = sub.add_parser("verify", help="run a verification suite")
    common(p)
    p.add_argument("--suite", choices=["exact", "linear", "lemmas", "all"], default=None)
    p.add_argument("--A-grid", dest="A_grid", default=None,
                   help="comma-separated amplitudes")
    return top


def _merge_config(args) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        if not isinstance(file_cfg, dict):
            raise ValueError("config file must hold a flat JSON object")
        cfg.update(file_cfg)
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None:
            cfg[key] = value
    return cfg


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        if args.command == "touching":
            lo, hi = cfg["bracket"]
            if lo >= hi:
                parser.error(f"--bracket must be increasing, got {lo} >= {hi}")
        handler = {
            "exact": cmd_exact,
            "solve": cmd_solve,
            "continue": cmd_continue,
            "touching": cmd_touching,
            "verify": cmd_verify,
        }[args.command]
        return handler(cfg)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"diskwave: {exc}", file=sys.stderr)
        return 2
    except DiskwaveError as exc:
        print(f"diskwave: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
