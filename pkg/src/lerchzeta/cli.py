"""Command-line front end.

Subcommands:

  eval        evaluate one zeta value (split-sum, oracle, or reflection route)
  fecheck     residual scan of the functional equations -> CSV
  afescan     split-sum vs oracle deviations against the error envelope -> CSV
  calibrate   measure envelope constants and write the calibration file
  meansquare  mean-square experiment ladder -> CSV

Every CSV has a JSON mirror via --format json.  Output is byte-deterministic
for identical flags except for the leading timestamp comment, which --no-meta
suppresses.  Exit codes: 0 success, 2 bad flags or domain errors, 3 when
--strict is set and any emitted point is flagged unreliable (or a scan point
fails its bound).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import time
from fractions import Fraction

from . import afe, funceq, meansquare
from .errors import ConfigError, DomainError
from .oracles import lerch_via_hurwitz
from .params import MAX_DENOMINATOR, LerchParams

__all__ = ["main"]


def _parse_fraction(text: str, name: str) -> tuple[float, Fraction | None]:
    """Parse "p/q" or a decimal.  Returns (float value, exact Fraction or
    None when the value has no denominator <= 64 representation)."""
    try:
        frac = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot parse {name}={text!r} as p/q or decimal")
    if not 0 < frac <= 1:
        raise DomainError(f"{name} must lie in (0, 1], got {text}")
    if frac.denominator <= MAX_DENOMINATOR:
        return float(frac), frac
    return float(frac), None


def _parse_split(spec: str, t: float) -> afe.AfeSplit:
    if spec in ("balanced", "meansquare", "meanSquare"):
        return afe.choose_split(t, "balanced" if spec == "balanced" else "meanSquare")
    parts = dict(p.split("=", 1) for p in spec.split(",") if "=" in p)
    bad = set(parts) - {"x", "y"}
    if not parts or bad:
        raise DomainError(f"bad --split {spec!r}: use balanced, meansquare, "
                          f"or x=...[,y=...]")
    x = float(parts["x"]) if "x" in parts else None
    y = float(parts["y"]) if "y" in parts else None
    if x is None:
        x = abs(t) / (2.0 * math.pi * y)
    elif y is None:
        y = abs(t) / (2.0 * math.pi * x)
    return afe.AfeSplit(x, y)


def _meta_line(args) -> str | None:
    if args.no_meta:
        return None
    return f"lerchzeta {args.command} {time.strftime('%Y-%m-%dT%H:%M:%S%z')}"


def _emit(args, rows: list[dict], csv_writer, records) -> None:
    """Write records as CSV (via the module writer) or as their JSON mirror."""
    meta = _meta_line(args)
    if args.format == "json":
        doc = {"records": rows}
        if meta:
            doc["meta"] = meta
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        csv_writer(records, buf, meta=meta)
        text = buf.getvalue()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def _cmd_eval(args) -> int:
    s = complex(args.sigma, args.t)
    alpha_f, alpha_frac = _parse_fraction(args.alpha, "alpha")
    lam_f, lam_frac = _parse_fraction(args.lam, "lambda")

    if args.method == "oracle":
        if lam_frac is None:
            raise DomainError("oracle method needs rational lambda (p/q, q <= 64)")
        res = lerch_via_hurwitz(s, alpha_f, lam_frac)
    elif args.method == "fe":
        if alpha_frac is None or lam_frac is None:
            raise DomainError("fe method needs rational alpha and lambda")
        if lam_frac == 1:
            res = funceq.fe_hurwitz_rhs(s, alpha_frac)
        else:
            res = funceq.fe_lerch_rhs(s, alpha_frac, lam_frac)
    else:
        if alpha_frac is None or lam_frac is None:
            print("warning: irrational parameter, no oracle cross-check applies",
                  file=sys.stderr)
        split = _parse_split(args.split, args.t)
        if lam_f == 1.0:
            res = afe.afe_hurwitz(s, alpha_f, split)
        else:
            res = afe.afe_lerch(s, LerchParams(alpha_f, lam_f), split)

    record = {
        "sigma": args.sigma, "t": args.t, "alpha": args.alpha, "lambda": args.lam,
        "method": args.method, "re": res.value.real, "im": res.value.imag,
        "error_estimate": res.error_estimate, "main_terms": res.main_terms,
        "dual_terms": res.dual_terms, "reliable": res.reliable,
    }
    if args.format == "json":
        print(json.dumps(record, indent=2))
    else:
        print(f"value = {res.value.real:.17g} {res.value.imag:+.17g}i")
        print(f"error_estimate = {res.error_estimate:.6g}")
        print(f"terms = {res.main_terms} main + {res.dual_terms} dual")
        print(f"method = {args.method}  reliable = {res.reliable}")
    if args.strict and not res.reliable:
        return 3
    return 0


# ---------------------------------------------------------------------------
# fecheck
# ---------------------------------------------------------------------------

def _cmd_fecheck(args) -> int:
    kinds = funceq.FE_KINDS if args.kind == "all" else (args.kind,)
    records = []
    for kind in kinds:
        records.extend(funceq.fe_residual_scan(kind, funceq.default_fe_grid(kind)))
    records.sort(key=lambda r: r.residual, reverse=True)
    rows = [{"sigma": r.s.real, "t": r.s.imag,
             "alpha_num": r.alpha.numerator, "alpha_den": r.alpha.denominator,
             "lambda_num": r.lam.numerator, "lambda_den": r.lam.denominator,
             "residual": r.residual, "reliable": r.reliable} for r in records]
    _emit(args, rows, funceq.write_scan_csv, records)
    worst = max((r.residual for r in records), default=0.0)
    print(f"fecheck: {len(records)} points, max_residual = {worst:.3e}",
          file=sys.stderr)
    if args.strict and any(not r.reliable for r in records):
        return 3
    return 0


# ---------------------------------------------------------------------------
# afescan
# ---------------------------------------------------------------------------

_SCAN_T = (80.0, 120.0, 300.0, 700.0)
_SCAN_SIGMA = (0.0, 0.25, 0.5, 0.75, 1.0)
_SCAN_FRACTIONS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def _scan_splits(t: float) -> list[tuple[str, afe.AfeSplit]]:
    xb = math.sqrt(abs(t) / (2.0 * math.pi))
    return [("balanced", afe.AfeSplit(xb, xb)),
            ("meanSquare", afe.choose_split(t, "meanSquare")),
            ("skew2", afe.AfeSplit(2.0 * xb, 0.5 * xb)),
            ("skew05", afe.AfeSplit(0.5 * xb, 2.0 * xb))]


def _write_afescan_csv(rows, fh, meta=None) -> None:
    if meta:
        fh.write(f"# {meta}\n")
    fh.write("kind,sigma,t,split,x,y,alpha_num,alpha_den,lambda_num,lambda_den,"
             "abs_err,envelope,ratio\n")
    for r in rows:
        fh.write(f"{r['kind']},{r['sigma']:.17g},{r['t']:.17g},{r['split']},"
                 f"{r['x']:.17g},{r['y']:.17g},"
                 f"{r['alpha_num']},{r['alpha_den']},"
                 f"{r['lambda_num']},{r['lambda_den']},"
                 f"{r['abs_err']:.17g},{r['envelope']:.17g},{r['ratio']:.17g}\n")


def _cmd_afescan(args) -> int:
    kinds = afe.KINDS if args.kind == "all" else (args.kind,)
    heights = args.t or list(_SCAN_T)
    rows = []
    cache: dict = {}
    for kind in kinds:
        if kind == "lerch":
            pairs = [(a, l) for a in _SCAN_FRACTIONS + (Fraction(1),)
                     for l in _SCAN_FRACTIONS]
        elif kind == "hurwitz":
            pairs = [(a, Fraction(1)) for a in _SCAN_FRACTIONS + (Fraction(1),)]
        else:
            pairs = [(Fraction(1), Fraction(1))]
        for t in heights:
            for sigma in _SCAN_SIGMA:
                s = complex(sigma, t)
                for split_name, split in _scan_splits(t):
                    for a, l in pairs:
                        key = (s, a, l)
                        if key not in cache:
                            cache[key] = lerch_via_hurwitz(s, float(a), l).value
                        if kind == "lerch":
                            v = afe.afe_lerch(s, LerchParams(float(a), float(l)),
                                              split).value
                        elif kind == "hurwitz":
                            v = afe.afe_hurwitz(s, float(a), split).value
                        else:
                            v = afe.afe_riemann(s, split).value
                        env = afe.error_envelope(kind, s, split).total
                        err = abs(v - cache[key])
                        rows.append({
                            "kind": kind, "sigma": sigma, "t": t,
                            "split": split_name, "x": split.x, "y": split.y,
                            "alpha_num": a.numerator, "alpha_den": a.denominator,
                            "lambda_num": l.numerator, "lambda_den": l.denominator,
                            "abs_err": err, "envelope": env, "ratio": err / env,
                        })
    _emit(args, rows, _write_afescan_csv, rows)
    failed = 0
    for kind in kinds:
        cfit = afe.get_cfit(kind)
        kr = [r for r in rows if r["kind"] == kind]
        worst = max(r["ratio"] for r in kr)
        failed += sum(1 for r in kr if r["ratio"] > cfit)
        print(f"afescan[{kind}]: {len(kr)} points, max ratio = {worst:.4f}, "
              f"C_fit = {cfit:.4f}", file=sys.stderr)
    if args.strict and failed:
        return 3
    return 0


# ---------------------------------------------------------------------------
# calibrate
# ---------------------------------------------------------------------------

def _cmd_calibrate(args) -> int:
    kinds = afe.KINDS if args.kind == "all" else (args.kind,)
    values = dict(afe.DEFAULT_CFIT)
    for kind in kinds:
        values[kind] = afe.envelope_fit(kind, afe.default_calibration_grid(kind))
        print(f"{kind} = {values[kind]:.17g}")
    if args.out != "-":
        afe.write_calibration(args.out, values)
        print(f"calibration written to {args.out}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# meansquare
# ---------------------------------------------------------------------------

def _cmd_meansquare(args) -> int:
    alpha_f, alpha_frac = _parse_fraction(args.alpha, "alpha")
    lam_f, lam_frac = _parse_fraction(args.lam, "lambda")
    if lam_frac is None:
        raise DomainError("meansquare needs rational lambda (the [1, t0] stub "
                          "uses the oracle route)")
    checkpoints = args.checkpoints or None
    records = meansquare.mean_square_ladder(
        args.T, alpha_f, lam_frac, step=args.step, method=args.method,
        checkpoints=checkpoints, threads=args.threads)
    rows = [{"T": r.T, "alpha": r.alpha, "lambda": r.lam,
             "integral": r.integral_value, "main_term": r.main_term,
             "residual": r.residual, "quad_err": r.quadrature_error_estimate,
             "method": r.method, "step": r.step, "reliable": r.reliable}
            for r in records]
    _emit(args, rows, meansquare.write_meansquare_csv, records)
    if len(records) >= 4:
        fit = meansquare.fit_residual_exponent(
            [r.T for r in records], [r.residual for r in records],
            [r.quadrature_error_estimate for r in records])
        print(f"meansquare: fitted residual exponent = {fit.exponent:.4f} "
              f"(constant {fit.constant:.4g}"
              f"{', degenerate' if fit.degenerate else ''})", file=sys.stderr)
    if args.strict and any(not r.reliable for r in records):
        return 3
    return 0


# ---------------------------------------------------------------------------

def _add_common(sp) -> None:
    sp.add_argument("--out", default="-", help="output path ('-' = stdout)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--no-meta", action="store_true",
                    help="suppress the timestamp comment line")
    sp.add_argument("--strict", action="store_true",
                    help="exit 3 if any point is flagged unreliable")
    sp.add_argument("--threads", type=int, default=1,
                    help="worker-pool cap for grid evaluation")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lerchzeta",
        description="Split-sum evaluation and verification for the Hurwitz "
                    "and Lerch zeta-functions")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval", help="evaluate one value")
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--alpha", default="1")
    sp.add_argument("--lambda", dest="lam", default="1")
    sp.add_argument("--method", choices=("afe", "oracle", "fe"), default="afe")
    sp.add_argument("--split", default="balanced",
                    help="balanced | meansquare | x=...[,y=...]")
    _add_common(sp)
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("fecheck", help="functional-equation residual scan")
    sp.add_argument("--kind", choices=funceq.FE_KINDS + ("all",), default="all")
    _add_common(sp)
    sp.set_defaults(func=_cmd_fecheck)

    sp = sub.add_parser("afescan", help="split-sum deviation vs envelope scan")
    sp.add_argument("--kind", choices=afe.KINDS + ("all",), default="all")
    sp.add_argument("--t", type=float, action="append",
                    help="height (repeatable; default 80,120,300,700)")
    _add_common(sp)
    sp.set_defaults(func=_cmd_afescan)

    sp = sub.add_parser("calibrate", help="measure envelope constants")
    sp.add_argument("--kind", choices=afe.KINDS + ("all",), default="all")
    sp.add_argument("--out", default="afe_calibration.txt")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--no-meta", action="store_true")
    sp.add_argument("--strict", action="store_true")
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=_cmd_calibrate)

    sp = sub.add_parser("meansquare", help="mean-square experiment")
    sp.add_argument("--T", type=float, required=True)
    sp.add_argument("--alpha", default="1")
    sp.add_argument("--lambda", dest="lam", default="1")
    sp.add_argument("--step", type=float, default=0.02)
    sp.add_argument("--method", choices=meansquare.METHODS, default="afe")
    sp.add_argument("--checkpoints", type=float, action="append",
                    help="checkpoint T (repeatable; default geometric ladder)")
    _add_common(sp)
    sp.set_defaults(func=_cmd_meansquare)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (DomainError, ConfigError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
