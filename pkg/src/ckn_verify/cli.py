"""Command-line front end: constant lookups, verification runs, sweeps.

Report rows are byte-stable: fixed column order, 12 significant digits,
LF line endings, rows sorted by (family, N, a, b, k, beta_or_t).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .constants import (
    ParamPoint,
    Region,
    classify_region,
    curlfree_ckn_constant,
    reference_constants,
    scalar_ckn_constant,
    second_order_constant,
)
from .extremizers import ExtremizerSpec, Family
from .specfun import KummerParams, kummer_1f1, kummer_1f1_derivative
from .verify import ReportTolerances, VerificationReport, run_verification

_COLUMNS = ("family", "N", "a", "b", "k", "beta_or_t", "quotient", "sharp_sq",
            "rel_error", "quad_residual", "pde_residual", "decay_ok", "passed")


@dataclass(frozen=True)
class SweepConfig:
    families: tuple
    dims: tuple
    a_grid: tuple
    b_grid: tuple
    k: int | None = None
    beta_or_t: float | None = None
    tolerances: ReportTolerances = ReportTolerances()
    output: str | None = None
    format: str = "csv"
    threads: int = 1


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, str)):
        return str(x)
    if x is None or math.isnan(x):
        return ""
    return "%.12g" % x


def _row_values(r: VerificationReport) -> list:
    return [r.family.value, r.params.N, r.params.a, r.params.b, r.k,
            r.beta_or_t, r.quotient, r.sharp_constant_sq, r.rel_error,
            r.quad_identity_residual, r.pde_residual, r.decay_ok, r.passed]


def _sort_key(r: VerificationReport):
    return (r.family.value, r.params.N, r.params.a, r.params.b, r.k,
            r.beta_or_t)


def _render(reports: list, fmt: str) -> str:
    reports = sorted(reports, key=_sort_key)
    if fmt == "csv":
        lines = [",".join(_COLUMNS)]
        for r in reports:
            lines.append(",".join(_fmt(v) for v in _row_values(r)))
        return "\n".join(lines) + "\n"
    objs = []
    for r in reports:
        obj = {}
        for name, v in zip(_COLUMNS, _row_values(r)):
            if isinstance(v, (bool, int, str)):
                obj[name] = v
            elif math.isnan(v):
                obj[name] = None
            else:
                # round through the CSV formatting so both outputs carry
                # the same numeric content
                obj[name] = float("%.12g" % v)
        objs.append(obj)
    return json.dumps(objs, indent=2) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _default_parameter(fam: Family, p: ParamPoint) -> float:
    """Sign-correct default family parameter for a sweep row."""
    if fam is Family.T1_CASE1:
        return 1.0
    if fam is Family.T1_CASE2:
        return -1.0
    if fam is Family.T2_RADIAL:
        # decay always wants beta > 0: the exponential argument carries the
        # sign of 2(1+a) through r^{2(1+a)} itself
        return 1.0
    if fam is Family.T2_KUMMER:
        return math.copysign(2.0, p.a + 1.0)
    region = classify_region(p)
    return -1.0 if region in (Region.A1, Region.B2, Region.LINE) else 1.0


def _run_sweep(cfg: SweepConfig) -> int:
    jobs = []
    for fam in cfg.families:
        for N in cfg.dims:
            for a in cfg.a_grid:
                for b in cfg.b_grid:
                    p = ParamPoint(N=N, a=a, b=b)
                    beta = (cfg.beta_or_t if cfg.beta_or_t is not None
                            else _default_parameter(fam, p))
                    k = cfg.k if cfg.k is not None else (
                        1 if fam is Family.T2_KUMMER else 0)
                    jobs.append((ExtremizerSpec(fam, beta_or_t=beta, k=k), p))

    def one(job):
        es, p = job
        return run_verification(es, p, cfg.tolerances)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
            reports = list(ex.map(one, jobs))
    else:
        reports = [one(j) for j in jobs]
    for r in reports:
        if r.error:
            sys.stderr.write(
                f"note: {r.family.value} (N={r.params.N}, a={r.params.a:g}, "
                f"b={r.params.b:g}): {r.error}\n")
    _emit(_render(reports, cfg.format), cfg.output)
    return 0 if all(r.passed for r in reports) else 1


def _floats(text: str) -> tuple:
    return tuple(float(v) for v in text.split(",") if v.strip() != "")


def _ints(text: str) -> tuple:
    return tuple(int(v) for v in text.split(",") if v.strip() != "")


def _families(text: str) -> tuple:
    out = []
    for name in text.split(","):
        name = name.strip()
        if not name:
            continue
        try:
            out.append(Family[name])
        except KeyError:
            raise ValueError(f"unknown family {name!r}; choose from "
                             + ",".join(f.name for f in Family))
    return tuple(out)


def _load_config(path: str) -> dict:
    cfg = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line {raw.rstrip()!r}")
            key, val = line.split("=", 1)
            cfg[key.strip()] = val.strip()
    return cfg


def _tolerances(src: dict) -> ReportTolerances:
    tol = ReportTolerances(
        rel_error=float(src.get("rel_tol", ReportTolerances.rel_error)),
        quad_identity=float(src.get("quad_tol", ReportTolerances.quad_identity)),
        pde=float(src.get("pde_tol", ReportTolerances.pde)))
    if not (tol.rel_error > 0 and tol.quad_identity > 0 and tol.pde > 0):
        raise ValueError("tolerances must be positive")
    return tol


def _thread_count(requested: int | None) -> int:
    n = requested if requested is not None else 1
    cap = os.environ.get("CKN_VERIFY_THREADS")
    if cap is not None:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def cmd_constants(args) -> int:
    p = ParamPoint(N=args.N, a=args.a, b=args.b)
    region = classify_region(p)
    lines = [f"region        {region.value}"]
    c = scalar_ckn_constant(p)
    note = "  (best constant not achieved on the line a = b+1)" \
        if region is Region.LINE else ""
    lines.append(f"scalar        C = {_fmt(c)}, C^2 = {_fmt(c * c)}{note}")
    try:
        cf = curlfree_ckn_constant(p)
        lines.append(f"curlfree      C = {_fmt(cf)}, C^2 = {_fmt(cf * cf)}")
    except ValueError as exc:
        lines.append(f"curlfree      {exc}")
    c2 = second_order_constant(p.N, p.a)
    lines.append(f"second_order  C^2 = {_fmt(c2)}")
    lines.append("reference constants:")
    for name, value in reference_constants(p.N).items():
        lines.append(f"  {name:<18} {_fmt(value)}")
    print("\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    fams = _families(args.family)
    if len(fams) != 1:
        raise ValueError("verify takes exactly one family")
    fam = fams[0]
    b = args.b
    if b is None:
        if fam in (Family.T2_RADIAL, Family.T2_KUMMER):
            b = args.a  # unused by the second-order functionals
        else:
            raise ValueError(f"--b is required for {fam.name}")
    p = ParamPoint(N=args.N, a=args.a, b=b)
    beta = (args.beta_or_t if args.beta_or_t is not None
            else _default_parameter(fam, p))
    k = args.k if args.k is not None else (1 if fam is Family.T2_KUMMER else 0)
    tol = _tolerances({k2: v for k2, v in
                       (("rel_tol", args.rel_tol), ("quad_tol", args.quad_tol),
                        ("pde_tol", args.pde_tol)) if v is not None})
    report = run_verification(ExtremizerSpec(fam, beta_or_t=beta, k=k), p, tol)
    if report.error:
        sys.stderr.write(f"note: {report.error}\n")
    _emit(_render([report], args.format or "csv"), args.output)
    return 0 if report.passed else 1


def cmd_sweep(args) -> int:
    merged = _load_config(args.config) if args.config else {}
    overrides = {
        "families": args.families, "N": args.dims, "a": args.a, "b": args.b,
        "k": args.k, "beta_or_t": args.beta_or_t, "output": args.output,
        "format": args.format, "rel_tol": args.rel_tol,
        "quad_tol": args.quad_tol, "pde_tol": args.pde_tol,
        "threads": args.threads,
    }
    for key, v in overrides.items():
        if v is not None:
            merged[key] = v
    missing = [key for key in ("families", "N", "a", "b") if key not in merged]
    if missing:
        raise ValueError(f"missing sweep keys: {', '.join(missing)}")
    families = _families(str(merged["families"]))
    dims = _ints(str(merged["N"]))
    a_grid = _floats(str(merged["a"]))
    b_grid = _floats(str(merged["b"]))
    if not (families and dims and a_grid and b_grid):
        raise ValueError("empty sweep grid")
    fmt = str(merged.get("format", "csv"))
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    sc = SweepConfig(
        families=families, dims=dims, a_grid=a_grid, b_grid=b_grid,
        k=int(merged["k"]) if "k" in merged else None,
        beta_or_t=float(merged["beta_or_t"]) if "beta_or_t" in merged else None,
        tolerances=_tolerances(merged),
        output=merged.get("output"),
        format=fmt,
        threads=_thread_count(int(merged["threads"]) if "threads" in merged
                              else None))
    return _run_sweep(sc)


def cmd_kummer(args) -> int:
    p = KummerParams(A=args.A, B=args.B, z=args.z)
    print("value       %.16g" % kummer_1f1(p))
    print("derivative  %.16g" % kummer_1f1_derivative(p))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ckn-verify",
        description="Verify sharp weighted CKN inequalities on their "
                    "explicit extremizer families.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constants", help="print the closed-form constants at a point")
    c.add_argument("--N", type=int, required=True, help="dimension")
    c.add_argument("--a", type=float, required=True, help="first weight exponent")
    c.add_argument("--b", type=float, required=True, help="second weight exponent")
    c.set_defaults(func=cmd_constants)

    def add_common(sp):
        sp.add_argument("--output", help="report file (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"),
                        help="report format (default: csv)")
        sp.add_argument("--rel-tol", dest="rel_tol", type=float,
                        help="quotient relative-error tolerance")
        sp.add_argument("--quad-tol", dest="quad_tol", type=float,
                        help="quadratic-identity residual tolerance")
        sp.add_argument("--pde-tol", dest="pde_tol", type=float,
                        help="pointwise residual tolerance")

    v = sub.add_parser("verify", help="verify a single (family, point)")
    v.add_argument("--family", required=True,
                   help="one of " + ",".join(f.name for f in Family))
    v.add_argument("--N", type=int, required=True)
    v.add_argument("--a", type=float, required=True)
    v.add_argument("--b", type=float, help="ignored by second-order families")
    v.add_argument("--k", type=int, help="harmonic degree (T2_KUMMER)")
    v.add_argument("--beta-or-t", dest="beta_or_t", type=float,
                   help="family parameter (default: sign-correct 1 or 2)")
    add_common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="verify a parameter grid")
    s.add_argument("--config", help="flat key=value file; flags override it. "
                   "Keys: families, N, a, b, k, beta_or_t, output, format, "
                   "rel_tol, quad_tol, pde_tol, threads")
    s.add_argument("--families", help="comma-separated family names")
    s.add_argument("--N", dest="dims", help="comma-separated dimensions")
    s.add_argument("--a", help="comma-separated a values")
    s.add_argument("--b", help="comma-separated b values")
    s.add_argument("--k", type=int)
    s.add_argument("--beta-or-t", dest="beta_or_t", type=float)
    s.add_argument("--threads", type=int,
                   help="row parallelism (capped by CKN_VERIFY_THREADS)")
    add_common(s)
    s.set_defaults(func=cmd_sweep)

    km = sub.add_parser("kummer", help="evaluate 1F1(A;B;z) and its derivative")
    km.add_argument("--A", type=float, required=True)
    km.add_argument("--B", type=float, required=True)
    km.add_argument("--z", type=float, required=True)
    km.set_defaults(func=cmd_kummer)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
