"""Command-line front end for reproducible experiments.

Subcommands: jones, saddle, volume, verify, contour, rep, regioncheck.
Exit codes: 0 ok, 2 usage error, 3 numeric error, 4 verification failure.
A flat key=value config file may preset any long option; explicit flags
win.  Floating output is printed with 15 significant digits; --format json
carries every printed number at full precision.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .jones import KnotSpec, jones_value, required_digits
from .potential import (PotentialParams, Region, boundary_gradient_check,
                        contour_grid, saddle_double, saddle_whitehead,
                        SaddleError)
from .qnum import DomainError, RootOfUnityCtx
from .specfun import NumericError
from .volume import (JonesCache, complex_volume_double,
                     complex_volume_whitehead, convergence_study,
                     log_corrected_extrapolation, volume_target,
                     write_convergence_csv)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_VERIFY = 4


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _emit(args, payload: dict, text_lines: list[str]):
    if args.format == "json":
        out = json.dumps(payload, indent=1)
    elif args.format == "csv":
        keys = [k for k, v in payload.items() if isinstance(v, (int, float, str))]
        out = ",".join(keys) + "\n" + ",".join(str(payload[k]) for k in keys)
    else:
        out = "\n".join(text_lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _knot_from(args) -> KnotSpec:
    return KnotSpec.parse(args.knot, p=args.p, r=args.r)


def cmd_jones(args) -> int:
    ctx = RootOfUnityCtx(args.N)
    knot = _knot_from(args)
    precision = args.precision
    if precision == "auto":
        target = volume_target(knot)
        precision = required_digits(ctx, args.N * target.vol / (2 * math.pi))
    elif precision is not None:
        precision = int(precision)
    jv = jones_value(ctx, knot, threads=args.threads, precision=precision)
    if args.cache:
        JonesCache(args.cache).put(knot, args.N, jv)
    z = jv.to_complex() if jv.value.logmag < 700 else complex("nan")
    payload = {
        "knot": knot.label(), "N": args.N, "method": jv.method,
        "re": z.real, "im": z.imag,
        "logmag": jv.value.logmag, "phase": jv.value.phase,
        "unreduced_phase": jv.unreduced_phase,
    }
    lines = [
        f"J_{{N-1}}({knot.label()}), N = {args.N} [{jv.method}]",
        f"  re     = {_fmt(z.real)}",
        f"  im     = {_fmt(z.imag)}",
        f"  logmag = {_fmt(jv.value.logmag)}",
        f"  phase  = {_fmt(jv.value.phase)}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_saddle(args) -> int:
    knot = _knot_from(args)
    if knot.family.value == "whitehead":
        sol = saddle_whitehead(knot.p)
    elif knot.family.value == "double":
        sol = saddle_double(knot.p, knot.r)
    else:
        print("saddle applies to whitehead/double families", file=sys.stderr)
        return EXIT_USAGE
    payload = {
        "knot": knot.label(),
        "re_alpha0": sol.alpha0.real, "im_alpha0": sol.alpha0.imag,
        "re_u": sol.u.real, "im_u": sol.u.imag,
        "re_value": sol.value.real, "im_value": sol.value.imag,
        "grad_residual": sol.grad_residual,
    }
    lines = [f"saddle for {knot.label()}",
             f"  alpha0 = {_fmt(sol.alpha0.real)} {sol.alpha0.imag:+.15g} i",
             f"  u      = {_fmt(sol.u.real)} {sol.u.imag:+.15g} i"]
    if sol.beta0 is not None:
        payload.update({"re_beta0": sol.beta0.real, "im_beta0": sol.beta0.imag,
                        "re_v": sol.v.real, "im_v": sol.v.imag})
        lines.append(f"  beta0  = {_fmt(sol.beta0.real)} {sol.beta0.imag:+.15g} i")
        lines.append(f"  v      = {_fmt(sol.v.real)} {sol.v.imag:+.15g} i")
    lines.append(f"  value  = {_fmt(sol.value.real)} {sol.value.imag:+.15g} i")
    lines.append(f"  grad residual = {sol.grad_residual:.3e}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_volume(args) -> int:
    knot = _knot_from(args)
    if knot.family.value == "whitehead":
        cv = complex_volume_whitehead(knot.p)
    elif knot.family.value == "double":
        cv = complex_volume_double(knot.p, knot.r)
    else:
        cv = volume_target(knot)
    payload = {"knot": knot.label(), "vol": cv.vol, "cs": cv.cs,
               "re_raw": cv.raw.real, "im_raw": cv.raw.imag, "path": cv.path}
    lines = [f"complex volume of {knot.label()} [path={cv.path}]",
             f"  vol = {_fmt(cv.vol)}",
             f"  cs  = {_fmt(cv.cs)}   (mod pi^2)"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    knot = _knot_from(args)
    Ns = [int(s) for s in args.Ns.split(",")]
    cache = JonesCache(args.cache) if args.cache else None
    rows = convergence_study(knot, Ns, threads=args.threads, cache=cache)
    target = rows[0].target
    lines = [f"convergence of (2 pi / N) log J for {knot.label()}",
             f"  target: vol = {_fmt(target.real)}, cs = {_fmt(target.imag)}",
             "  N    re_growth           abs_err"]
    for row in rows:
        lines.append(f"  {row.N:<4d} {row.growth.real:<18.12f}  {row.abs_err:.6f}")
    decreasing = all(rows[i].abs_err < rows[i - 1].abs_err * 1.02
                     for i in range(1, len(rows)))
    final_rel = rows[-1].abs_err / abs(target.real)
    ok = decreasing and final_rel < args.tol
    if len(rows) >= 3:
        v_fit = log_corrected_extrapolation(rows)
        lines.append(f"  extrapolated vol = {_fmt(v_fit)} "
                     f"(error {abs(v_fit - target.real) / abs(target.real):.2%})")
    lines.append(f"  final relative error {final_rel:.2%} "
                 f"({'PASS' if ok else 'FAIL'} at tol {args.tol:.0%})")
    payload = {
        "knot": knot.label(),
        "rows": [{"N": row.N, "re_growth": row.growth.real,
                  "im_growth": row.growth.imag, "re_target": row.target.real,
                  "im_target": row.target.imag, "abs_err": row.abs_err}
                 for row in rows],
        "final_rel_err": final_rel, "pass": ok,
    }
    if args.out and args.format == "csv":
        write_convergence_csv(rows, args.out)
        print(f"wrote {args.out}")
    else:
        _emit(args, payload, lines)
    if args.plot:
        _plot_convergence(rows, target, args.plot)
        print(f"wrote {args.plot}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_contour(args) -> int:
    knot = _knot_from(args)
    if knot.family.value == "whitehead":
        params = PotentialParams("W", knot.p)
    elif knot.family.value == "double":
        params = PotentialParams("D", knot.p, knot.r)
    else:
        print("contour applies to whitehead/double families", file=sys.stderr)
        return EXIT_USAGE
    out = args.out or "contour.csv"
    rows = contour_grid(
        params, out,
        re_range=(args.re_min, args.re_max),
        second_range=(args.y_min, args.y_max),
        imag_shift=(args.shift_alpha, args.shift_beta),
        resolution=(args.nx, args.ny))
    print(f"wrote {out} ({len(rows)} samples)")
    if args.plot:
        _plot_contour(rows, args.nx, args.ny, params, args.plot)
        print(f"wrote {args.plot}")
    return EXIT_OK


def cmd_rep(args) -> int:
    from .holonomy import (borromean_solutions, borromean_variant,
                           build_rep_whitehead, dpr_solve, export_domain,
                           wp_geometric_u)
    knot = _knot_from(args)
    fam = knot.family.value
    if fam == "whitehead":
        u, _ = wp_geometric_u(knot.p)
        data = build_rep_whitehead(u, knot.p)
        data.relation_residuals = data.relation_residuals or {}
    elif fam == "double":
        data = dpr_solve(knot.p, knot.r)
    elif fam in ("borromean", "b1", "b11"):
        data = borromean_variant(fam)
    else:  # pragma: no cover
        return EXIT_USAGE
    out = args.out or "rep.json"
    doc = export_domain(data, out)
    worst = max(doc["relation_residuals"].values()) if doc["relation_residuals"] else 0.0
    print(f"wrote {out} (worst relation residual {worst:.2e})")
    return EXIT_OK


def cmd_regioncheck(args) -> int:
    region = Region(args.region)
    report = boundary_gradient_check(args.p, args.r, region)
    payload = {
        "p": args.p, "r": args.r, "region": args.region,
        "min_grad_on_boundary": report.min_grad_on_boundary,
        "critical_points": [[z[0].real, z[0].imag, z[1].real, z[1].imag]
                            for z in report.interior_critical_points],
    }
    lines = [f"region {args.region} for (p, r) = ({args.p}, {args.r})",
             f"  min |grad| on boundary = {_fmt(report.min_grad_on_boundary)}",
             f"  interior critical points: {len(report.interior_critical_points)}"]
    for a, b in report.interior_critical_points:
        lines.append(f"    alpha = {_fmt(a.real)} {a.imag:+.15g} i, "
                     f"beta = {_fmt(b.real)} {b.imag:+.15g} i")
    _emit(args, payload, lines)
    return EXIT_OK


def _plot_contour(rows, nx, ny, params, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    x = np.array([r["re_alpha"] if params.family == "W" else r["re_alpha"]
                  for r in rows]).reshape(ny, nx)
    if params.family == "W":
        y = np.array([r["im_alpha"] for r in rows]).reshape(ny, nx)
    else:
        y = np.array([r["re_beta"] for r in rows]).reshape(ny, nx)
    f = np.array([r["re_f"] for r in rows]).reshape(ny, nx)
    fig, ax = plt.subplots(figsize=(6, 5))
    cs = ax.contour(x, y, f, levels=21, linewidths=0.7)
    ax.clabel(cs, inline=True, fontsize=6)
    ax.set_xlabel("Re alpha")
    ax.set_ylabel("Im alpha" if params.family == "W" else "Re beta")
    ax.set_title(f"Re of shifted potential, {params.family} "
                 f"(p={params.p}" + (f", r={params.r})" if params.family == "D" else ")"))
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _plot_convergence(rows, target, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    Ns = [r.N for r in rows]
    errs = [r.abs_err for r in rows]
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(Ns, errs, "o-")
    ax.set_xlabel("N")
    ax.set_ylabel("|(2 pi/N) log|J| - vol|")
    ax.set_title(f"growth-rate error vs N (vol = {target.real:.6f})")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _load_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="knotvol",
        description="state sums, saddle points and hyperbolic volumes for "
                    "Borromean-family links, twisted Whitehead links and "
                    "double twist knots")
    ap.add_argument("--config", help="flat key=value config file")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, with_N=False, with_Ns=False):
        sp.add_argument("--knot", required=True,
                        help="borromean | b1 | b11 | whitehead | double | twist")
        sp.add_argument("--p", type=int, default=None)
        sp.add_argument("--r", type=int, default=None)
        if with_N:
            sp.add_argument("--N", type=int, required=True, help="odd N >= 3")
        if with_Ns:
            sp.add_argument("--Ns", required=True,
                            help="comma-separated ascending odd N values")
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--cache", default=None,
                        help="JSON-lines cache path for Jones values")
        sp.add_argument("--tol", type=float, default=0.05)

    sp = sub.add_parser("jones", help="evaluate J_{N-1}")
    common(sp, with_N=True)
    sp.add_argument("--precision", default=None,
                    help="decimal digits for the high-accuracy path, or 'auto'")
    sp.set_defaults(func=cmd_jones)

    sp = sub.add_parser("saddle", help="saddle point of the potential")
    common(sp)
    sp.set_defaults(func=cmd_saddle)

    sp = sub.add_parser("volume", help="complex volume")
    common(sp)
    sp.set_defaults(func=cmd_volume)

    sp = sub.add_parser("verify", help="growth-rate convergence check")
    common(sp, with_Ns=True)
    sp.add_argument("--plot", default=None, help="error-vs-N figure (png)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("contour", help="shifted-potential grid CSV")
    common(sp)
    sp.add_argument("--re-min", type=float, default=0.0)
    sp.add_argument("--re-max", type=float, default=1.0)
    sp.add_argument("--y-min", type=float, default=-0.3)
    sp.add_argument("--y-max", type=float, default=0.1)
    sp.add_argument("--shift-alpha", type=float, default=0.0)
    sp.add_argument("--shift-beta", type=float, default=0.0)
    sp.add_argument("--nx", type=int, default=120)
    sp.add_argument("--ny", type=int, default=120)
    sp.add_argument("--plot", default=None, help="contour figure (png)")
    sp.set_defaults(func=cmd_contour)

    sp = sub.add_parser("rep", help="holonomy representation JSON")
    common(sp)
    sp.set_defaults(func=cmd_rep)

    sp = sub.add_parser("regioncheck", help="boundary gradient / critical points")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--region", choices=[r.value for r in Region],
                    default="E")
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sp.set_defaults(func=cmd_regioncheck)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # config file values act as defaults; explicit flags override
    if "--config" in argv:
        idx = argv.index("--config")
        cfg = _load_config(argv[idx + 1])
        del argv[idx:idx + 2]
        for key, val in cfg.items():
            flag = "--" + key.replace("_", "-")
            if flag not in argv:
                argv.extend([flag, val])
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, SaddleError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
