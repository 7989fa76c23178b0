"""Command-line front end: ``eccache {simulate,rates,curve,verify,nq}``.

Exit codes: 0 success, 1 verification or simulation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .caching import SchemeError, all_demands, distinct_demands, make_config, make_demand, symmetric_batch_prefetch
from .codes import SizeError, optimal_length_report
from .delivery import yma_transmissions
from .ecc import (avg_rate, build_scheme, kappa_closed_form, lower_hull, peak_rate, rate_envelope, rate_points,
                  simulate)
from .indexcoding import (DEFAULT_ALPHA_CAP, DEFAULT_MINRANK_CAP, IndexCodingInstance, alpha_brute, free_bits,
                          induce, minrank_brute)

FORMAT_VERSION = 1


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _add_config_flags(p, with_m=True):
    p.add_argument("--N", type=int, help="number of files")
    p.add_argument("--K", type=int, help="number of users")
    if with_m:
        p.add_argument("--M", type=str, help="cache size in files (integer, decimal or a/b)")
    p.add_argument("--subfile-bits", type=int, default=None)
    p.add_argument("--delta", type=int, default=None, help="number of block errors to correct")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--config", type=str, help="JSON config file; its values override flags")
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    p.add_argument("--out", type=str, help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eccache", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="build a scheme and run an error sweep")
    _add_config_flags(p)
    p.add_argument("--demand", type=str, help="comma-separated 1-based file indices")
    p.add_argument("--errors", choices=("adversarial", "random"), default="adversarial")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--error-blocks", type=int, default=None,
                   help="max corrupted blocks per pattern (default: delta)")
    p.add_argument("--scheme-out", type=str, help="also write the scheme file here")

    p = sub.add_parser("rates", help="exact average and peak rates")
    _add_config_flags(p)

    p = sub.add_parser("curve", help="rate-memory curve (lower convex envelope)")
    _add_config_flags(p, with_m=False)
    p.add_argument("--points", type=int, default=11)
    p.add_argument("--rate", choices=("peak", "avg"), default="peak")

    p = sub.add_parser("verify", help="brute-force alpha = min-rank = YMA length over all demands")
    _add_config_flags(p)
    p.add_argument("--alpha-cap", type=int, default=DEFAULT_ALPHA_CAP)
    p.add_argument("--minrank-cap", type=int, default=DEFAULT_MINRANK_CAP)
    p.add_argument("--instance", type=str, help="standalone index-coding instance JSON")

    p = sub.add_parser("nq", help="shortest binary linear code N_2[k, d]")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--no-table", action="store_true", help="re-derive by search instead of the built-in table")
    p.add_argument("--format", choices=("json", "pretty"), default="pretty")
    p.add_argument("--out", type=str)
    return ap


def _resolve(args) -> dict:
    """Merge flags with an optional JSON config (config wins)."""
    vals = {"N": args.N, "K": args.K, "M": getattr(args, "M", None),
            "subfile_bits": args.subfile_bits, "delta": args.delta, "seed": args.seed}
    if getattr(args, "demand", None) is not None:
        vals["demand"] = args.demand
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        for key, v in cfg.items():
            if key == "demand" and isinstance(v, list):
                v = ",".join(map(str, v))
            vals[key] = v
    vals.setdefault("demand", None)
    vals["subfile_bits"] = vals["subfile_bits"] or 8
    vals["delta"] = 0 if vals["delta"] is None else int(vals["delta"])
    vals["seed"] = 0 if vals["seed"] is None else int(vals["seed"])
    if vals["N"] is None or vals["K"] is None:
        raise UsageError("--N and --K are required")
    return vals


def _config(vals):
    if vals["M"] is None:
        raise UsageError("--M is required")
    try:
        return make_config(int(vals["N"]), int(vals["K"]), str(vals["M"]), int(vals["subfile_bits"]))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_simulate(args) -> int:
    vals = _resolve(args)
    cfg = _config(vals)
    if vals["demand"] is None:
        raise UsageError("simulate requires --demand")
    try:
        d = make_demand(vals["demand"], cfg)
        r = cfg.r_int
    except (ValueError, SchemeError) as exc:
        raise UsageError(str(exc)) from exc
    pf = symmetric_batch_prefetch(cfg, seed=vals["seed"])
    scheme = build_scheme(cfg, pf, d, vals["delta"])
    report = simulate(scheme, pf, mode=args.errors, max_blocks=args.error_blocks,
                      trials=args.trials, seed=vals["seed"])
    if args.scheme_out:
        with open(args.scheme_out, "w") as fh:
            fh.write(_dump(scheme.to_json(vals["seed"])))
    ok = report["clean_pass"] and report["totals"]["failed"] == 0
    if args.format == "json":
        _emit(args, _dump(report))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["blocks", "flips", "variants", "in_contract", "pass", "failed_users"])
        for row in report["patterns"]:
            w.writerow([" ".join(map(str, row["blocks"])), " ".join(row["flips"]), " ".join(row["variants"]),
                        int(row["in_contract"]), int(row["pass"]), " ".join(map(str, row["failed_users"]))])
        _emit(args, buf.getvalue())
    else:
        t = report["totals"]
        lines = [f"N={cfg.N} K={cfg.K} M={_frac(cfg.M)} r={r} demand={','.join(map(str, d))} delta={scheme.delta}",
                 f"inner symbols: {scheme.ell}  outer code: [{scheme.outer.n},{scheme.outer.k},{scheme.outer.d}]"
                 f"  blocks: {scheme.n_tx}",
                 f"patterns: {t['patterns']}  passed: {t['passed']}  failed: {t['failed']}"]
        for row in report["patterns"]:
            if not row["pass"]:
                lines.append(f"FAIL blocks={row['blocks']} flips={row['flips']} users={row['failed_users']}")
                break
        lines.append("OK" if ok else "FAILED")
        _emit(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_rates(args) -> int:
    vals = _resolve(args)
    cfg = _config(vals)
    if not cfg.constructible:
        raise UsageError(f"r = KM/N = {cfg.r} is not an integer; use `eccache curve` for memory sharing")
    r, delta = cfg.r_int, vals["delta"]
    kappas = {t: kappa_closed_form(cfg.K, r, t) for t in range(1, min(cfg.N, cfg.K) + 1)}
    avg, peak = avg_rate(cfg, delta), peak_rate(cfg, delta)
    out = {"format_version": FORMAT_VERSION, "config": cfg.to_json(), "r": r, "delta": delta,
           "kappa_by_Ne": {str(t): k for t, k in kappas.items()},
           "avg_rate": _frac(avg), "avg_rate_float": float(avg),
           "peak_rate": _frac(peak), "peak_rate_float": float(peak)}
    if args.format == "json":
        _emit(args, _dump(out))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "M", "r", "rate_num", "rate_den", "rate_float"])
        for kind, v in (("avg", avg), ("peak", peak)):
            w.writerow([kind, _frac(cfg.M), r, v.numerator, v.denominator, repr(float(v))])
        _emit(args, buf.getvalue())
    else:
        lines = [f"N={cfg.N} K={cfg.K} M={_frac(cfg.M)} r={r} delta={delta}"]
        lines += [f"  kappa(Ne={t}) = {k}" for t, k in kappas.items()]
        lines.append(f"average rate: {_frac(avg)} ({float(avg):.6g})")
        lines.append(f"peak rate:    {_frac(peak)} ({float(peak):.6g})")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_curve(args) -> int:
    vals = _resolve(args)
    N, K, delta = int(vals["N"]), int(vals["K"]), vals["delta"]
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    if N < 1 or K < 1:
        raise UsageError("need N, K >= 1")
    vertices = rate_points(N, K, delta, args.rate)
    hull = lower_hull(vertices)
    samples = [Fraction(N * i, args.points - 1) for i in range(args.points)]
    rows = [("vertex", m, v) for m, v in vertices]
    rows += [("sample", m, rate_envelope(N, K, delta, m, args.rate)) for m in samples]
    if args.format == "json":
        _emit(args, _dump({
            "format_version": FORMAT_VERSION, "N": N, "K": K, "delta": delta, "rate": args.rate,
            "vertices": [{"M": _frac(m), "rate": _frac(v)} for m, v in vertices],
            "hull": [{"M": _frac(m), "rate": _frac(v)} for m, v in hull],
            "samples": [{"M": _frac(m), "rate": _frac(v), "rate_float": float(v)} for kind, m, v in rows
                        if kind == "sample"],
        }))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["M", "r", "rate_num", "rate_den", "rate_float", "kind"])
        for kind, m, v in rows:
            w.writerow([_frac(m), _frac(m * K / N), v.numerator, v.denominator, repr(float(v)), kind])
        _emit(args, buf.getvalue())
    return 0


def _verify_instance(args) -> int:
    try:
        with open(args.instance) as fh:
            inst = IndexCodingInstance.from_json(json.load(fh))
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"bad instance file: {exc}") from exc
    a = alpha_brute(inst, args.alpha_cap)
    row = {"messages": inst.n, "receivers": len(inst.receivers), "alpha": a, "kappa": None}
    if free_bits(inst) <= args.minrank_cap:
        row["kappa"] = minrank_brute(inst, args.minrank_cap)
    out = {"format_version": FORMAT_VERSION, "instance": row}
    if args.format == "json":
        _emit(args, _dump(out))
    else:
        _emit(args, f"messages={inst.n} receivers={len(inst.receivers)} alpha={a} kappa={row['kappa']}\n")
    return 0


def cmd_verify(args) -> int:
    if args.instance:
        return _verify_instance(args)
    vals = _resolve(args)
    cfg = _config(vals)
    try:
        r = cfg.r_int
    except SchemeError as exc:
        raise UsageError(str(exc)) from exc
    pf = symmetric_batch_prefetch(cfg, seed=vals["seed"])
    rows = []
    ok = True
    for d in all_demands(cfg.N, cfg.K):
        inst = induce(cfg, pf, d)
        ell = len(yma_transmissions(cfg, pf, d)[0])
        closed = kappa_closed_form(cfg.K, r, distinct_demands(d))
        a = alpha_brute(inst, args.alpha_cap)
        kap = None
        if free_bits(inst) <= args.minrank_cap:
            kap = minrank_brute(inst, args.minrank_cap, lower_hint=a)
        good = a == ell == closed and (kap is None or kap == a)
        ok &= good
        rows.append({"demand": list(d), "Ne": distinct_demands(d), "yma_length": ell, "closed_form": closed,
                     "alpha": a, "kappa": kap, "status": ("ok" if kap is not None else "alpha-only") if good
                     else "MISMATCH"})
    summary = {"demands": len(rows), "all_equal": ok,
               "kappa_checked": sum(r_["kappa"] is not None for r_ in rows)}
    if args.format == "json":
        _emit(args, _dump({"format_version": FORMAT_VERSION, "config": cfg.to_json(), "rows": rows,
                           "summary": summary}))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["demand", "Ne", "yma_length", "closed_form", "alpha", "kappa", "status"])
        for row in rows:
            w.writerow([" ".join(map(str, row["demand"])), row["Ne"], row["yma_length"], row["closed_form"],
                        row["alpha"], "" if row["kappa"] is None else row["kappa"], row["status"]])
        _emit(args, buf.getvalue())
    else:
        lines = [f"{'demand':<12} Ne  YMA  closed  alpha  kappa  status"]
        for row in rows:
            kap = "-" if row["kappa"] is None else str(row["kappa"])
            lines.append(f"{','.join(map(str, row['demand'])):<12} {row['Ne']:>2}  {row['yma_length']:>3}"
                         f"  {row['closed_form']:>6}  {row['alpha']:>5}  {kap:>5}  {row['status']}")
        lines.append(f"{summary['demands']} demands, min-rank checked on {summary['kappa_checked']}: "
                     + ("all equal" if ok else "MISMATCH"))
        _emit(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_nq(args) -> int:
    rep = optimal_length_report(args.k, args.d, use_table=not args.no_table)
    if args.format == "json":
        _emit(args, _dump({"format_version": FORMAT_VERSION, **rep}))
    else:
        g = "\n".join("  " + "".join(map(str, row)) for row in rep["code"]["generator"])
        tight = ", ".join(rep["tight_bounds"]) or "neither"
        _emit(args, f"N_2[{rep['k']},{rep['d']}] = {rep['n']}\n"
                    f"griesmer bound: {rep['griesmer']}  sphere-packing bound: {rep['sphere_packing']}"
                    f"  tight: {tight}\ngenerator:\n{g}\n")
    return 0


COMMANDS = {"simulate": cmd_simulate, "rates": cmd_rates, "curve": cmd_curve, "verify": cmd_verify, "nq": cmd_nq}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, SizeError) as exc:
        print(f"eccache {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
