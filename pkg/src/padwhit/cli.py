"""Batch command-line frontend.

Subcommands:

* ``value``  -- one newvector value at a representative triple;
* ``scan``   -- sup-norm rows for a descriptor family, to CSV or JSON;
* ``verify`` -- run the verification suite and exit nonzero on failure.

Outputs are deterministic: identical inputs produce byte-identical files
(wall-clock timing columns are left empty unless ``--timings`` is given).
Exit codes: 0 ok, 1 check or certification failure, 2 usage error, 3 I/O
error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
import time

from mpmath import mp, mpf

from . import __version__
from .characters import perturb_epsilon
from .engine import (
    Representative,
    coefficient_table,
    default_t_max,
    sup_norm,
    whittaker_value,
)
from .numerics import set_precision
from .representations import (
    Representation,
    parse_rep,
    standard_family,
)
from .verify import manifest, run_suite

SCHEMA_VERSION = 1

SCAN_COLUMNS = [
    "p", "n", "m", "type", "spec", "h", "witness_t", "witness_k", "witness_v",
    "lower_ref", "upper_ref", "ratio_lower", "ratio_upper", "certified",
    "t_max", "lindelof_exponent", "wall_time",
]


class UsageError(ValueError):
    pass


def _fmt(x, digits: int = 24) -> str:
    return mp.nstr(mpf(x), digits, strip_zeros=True)


def _rep_from_args(args) -> Representation:
    given = [name for name in ("ps", "st", "sc") if getattr(args, name, None)]
    if len(given) != 1:
        raise UsageError("exactly one of --ps / --st / --sc is required")
    kind = given[0]
    if kind == "sc":
        if not args.oracle:
            raise UsageError("--sc needs --oracle FILE with the twist data")
        rep = parse_rep("sc", args.sc, oracle=args.oracle)
        _check_sc_payload(args.sc, rep)
        return rep
    return parse_rep(kind, getattr(args, kind), p=args.p)


def _check_sc_payload(payload: str, rep) -> None:
    """--sc n,CHAR must agree with the oracle file contents."""
    from .characters import format_char, parse_unit_char

    parts = payload.split(",", 1)
    if len(parts) != 2:
        raise UsageError("--sc expects 'n,CHAR' (conductor exponent and "
                         "central character)")
    try:
        n = int(parts[0])
        omega = parse_unit_char(parts[1], rep.p)
    except ValueError as exc:
        raise UsageError(str(exc))
    if n != rep.n or omega != rep.omega:
        raise UsageError(
            f"--sc {payload!r} disagrees with the oracle "
            f"(n={rep.n}, omega={format_char(rep.omega)})"
        )


def cmd_value(args) -> int:
    rep = _rep_from_args(args)
    r = Representative(args.t, args.k, args.v)
    if not 0 <= args.k <= rep.n:
        raise UsageError(f"k={args.k} outside the representative domain [0, {rep.n}]")
    if args.v % rep.p == 0:
        raise UsageError(f"v={args.v} is not a unit at p={rep.p}")
    used_reduction = 2 * r.k > rep.n
    value = whittaker_value(rep, r, t_max=args.tmax)
    print(f"representation: {rep.spec_string()}  (n={rep.n}, m={rep.m})")
    print(f"representative: t={r.t} k={r.k} v={r.v}")
    print(f"value: {mp.nstr(value, 20)}")
    print(f"modulus: {_fmt(abs(value), 20)}")
    print(f"atkin_lehner_reduction: {'yes' if used_reduction else 'no'}")
    return 0


def _scan_row(rep: Representation, t_max: int | None, cache_dir: str | None,
              timings: bool, tolerance: float = 1e-9) -> dict:
    start = time.monotonic()
    if cache_dir:
        _warm_tables_cached(rep, t_max, cache_dir)
    res = sup_norm(rep, t_max=t_max, tolerance=mpf(tolerance))
    elapsed = time.monotonic() - start
    kind = {"PrincipalSeries": "ps", "SteinbergTwist": "st"}.get(
        type(rep).__name__, "sc")
    n = rep.n
    lind = mp.log(res.h) / (n * mp.log(rep.p)) if n else mpf(0)
    return {
        "p": rep.p,
        "n": n,
        "m": rep.m,
        "type": kind,
        "spec": rep.spec_string(),
        "h": _fmt(res.h),
        "witness_t": res.witness.t,
        "witness_k": res.witness.k,
        "witness_v": res.witness.v,
        "lower_ref": _fmt(res.lower_ref),
        "upper_ref": _fmt(res.upper_ref),
        "ratio_lower": _fmt(res.h / res.lower_ref),
        "ratio_upper": _fmt(res.h / res.upper_ref),
        "certified": str(bool(res.certified)).lower(),
        "t_max": res.t_max,
        "lindelof_exponent": _fmt(lind, 12),
        "wall_time": f"{elapsed:.3f}" if timings else "",
    }


def _sort_key(rep: Representation):
    return (rep.p, rep.n, rep.m, rep.spec_string())


def cmd_scan(args) -> int:
    reps: list[Representation] = []
    for p in args.p:
        reps.extend(standard_family(p, args.nmax, args.family))
    if args.conjecture_regime:
        reps = [r for r in reps if 2 * r.m <= r.n + 1]
    reps.sort(key=_sort_key)
    rows = []
    if args.jobs > 1 and len(reps) > 1:
        from concurrent.futures import ProcessPoolExecutor

        payload = [(r.spec_string(), args.tmax, args.cache_dir,
                    args.timings, args.tolerance, mp.prec) for r in reps]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_scan_row_from_spec, payload))
    else:
        for rep in reps:
            rows.append(_scan_row(rep, args.tmax, args.cache_dir, args.timings,
                                  args.tolerance))
    text = _render_rows(rows, args.format)
    _write_output(args.out, text)
    return 0


def _scan_row_from_spec(item) -> dict:
    spec, tmax, cache_dir, timings, tolerance, prec = item
    set_precision(prec)
    kind, payload = spec.split(":", 1)
    rep = parse_rep(kind, payload)
    return _scan_row(rep, tmax, cache_dir, timings, tolerance)


def _render_rows(rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=SCAN_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        return buf.getvalue()
    doc = {
        "schema_version": SCHEMA_VERSION,
        "params": {"tool": "padwhit", "version": __version__},
        "rows": rows,
        "checks": [],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _write_output(path: str | None, text: str) -> None:
    if not path or path == "-":
        sys.stdout.write(text)
        return
    _atomic_write(path, text)


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".padwhit-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --------------------------------------------------------------------------
# Coefficient-table cache: one file per (p, rep spec, k, character index).
# Advisory only; a freshly computed column is compared on every load.


def _cache_key(rep: Representation, k: int, mu_index: int, t_max: int) -> str:
    raw = f"{rep.p}|{rep.spec_string()}|{k}|{mu_index}|{t_max}|{mp.prec}"
    return hashlib.sha256(raw.encode()).hexdigest()[:32]


def _warm_tables_cached(rep: Representation, t_max: int | None,
                        cache_dir: str) -> None:
    from .characters import characters_mod

    eff = t_max if t_max is not None else default_t_max(rep)
    os.makedirs(cache_dir, exist_ok=True)
    verified_one = False
    for k in range(rep.n // 2 + 1):
        chars = characters_mod(rep.p, k)
        for i, mu in enumerate(chars):
            path = os.path.join(cache_dir, _cache_key(rep, k, i, eff) + ".json")
            if os.path.exists(path):
                with open(path, "r", encoding="utf-8") as fh:
                    stored = json.load(fh)
                if not verified_one:
                    fresh = coefficient_table(rep, k, mu, eff)
                    if not _table_matches(stored, fresh):
                        raise RuntimeError(
                            f"cache spot-check failed for {path}; delete the cache"
                        )
                    verified_one = True
            else:
                tab = coefficient_table(rep, k, mu, eff)
                payload = {
                    "spec": rep.spec_string(),
                    "k": k,
                    "mu_index": i,
                    "A": tab.A,
                    "coeffs": [
                        [t, mp.nstr(c.real, 40), mp.nstr(c.imag, 40)]
                        for t, c in sorted(tab.coeffs.items())
                    ],
                }
                _atomic_write(path, json.dumps(payload, sort_keys=True))


def _table_matches(stored: dict, fresh) -> bool:
    coeffs = {int(t): (mpf(re), mpf(im)) for t, re, im in stored["coeffs"]}
    if set(coeffs) != set(fresh.coeffs):
        return False
    for t, (re, im) in coeffs.items():
        c = fresh.coeffs[t]
        if abs(c.real - re) > mpf("1e-25") or abs(c.imag - im) > mpf("1e-25"):
            return False
    return True


def cmd_verify(args) -> int:
    suites = ("gl1", "representation", "main") if args.suite == "all" else (args.suite,)
    if args.perturb_eps:
        with perturb_epsilon(args.perturb_eps):
            reports = run_suite(tuple(args.p), args.amax, args.nmax,
                                args.tmax, suites)
    else:
        reports = run_suite(tuple(args.p), args.amax, args.nmax,
                            args.tmax, suites)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "params": {
            "p": list(args.p),
            "amax": args.amax,
            "nmax": args.nmax,
            "suites": list(suites),
            "perturb_eps": args.perturb_eps,
        },
        "rows": [],
        "checks": manifest(reports),
    }
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    _write_output(args.out, text)
    failed = [r.check_id for r in reports if not r.passed]
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        print(f"[{status}] {r.check_id}: {r.cases} cases, "
              f"max dev {mp.nstr(r.max_deviation, 6)} ({r.family})",
              file=sys.stderr)
    return 1 if failed else 0


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="padwhit",
        description="Exact p-adic Whittaker newvector values and sup-norms",
    )
    ap.add_argument("--precision-bits", type=int, default=128,
                    help="binary working precision (default 128)")
    sub = ap.add_subparsers(dest="command", required=True)

    common_rep = argparse.ArgumentParser(add_help=False)
    common_rep.add_argument("--p", type=int, default=None,
                            help="expected residue characteristic (sanity check)")
    common_rep.add_argument("--ps", help="principal series: CHAR,CHAR")
    common_rep.add_argument("--st", help="Steinberg twist: CHAR")
    common_rep.add_argument("--sc", help="supercuspidal: n,CHAR (with --oracle)")
    common_rep.add_argument("--oracle", help="supercuspidal twist-data JSON file")
    common_rep.add_argument("--tmax", type=int, default=None,
                            help="table depth (default 2n + 20)")

    ap_value = sub.add_parser("value", parents=[common_rep],
                              help="evaluate the newvector at one representative")
    ap_value.add_argument("--t", type=int, required=True)
    ap_value.add_argument("--k", type=int, required=True)
    ap_value.add_argument("--v", type=int, default=1)
    ap_value.set_defaults(func=cmd_value)

    ap_scan = sub.add_parser("scan", help="sup-norm scan over a family")
    ap_scan.add_argument("--p", type=_int_list, required=True,
                         help="comma-separated primes")
    ap_scan.add_argument("--nmax", type=int, required=True)
    ap_scan.add_argument("--family", choices=("ps", "steinberg", "all"),
                         default="all")
    ap_scan.add_argument("--conjecture-regime", action="store_true",
                         help="keep only m <= ceil(n/2) rows")
    ap_scan.add_argument("--tmax", type=int, default=None)
    ap_scan.add_argument("--tolerance", type=float, default=1e-9,
                         help="numerical guard tolerance for certification")
    ap_scan.add_argument("--jobs", type=int, default=1)
    ap_scan.add_argument("--cache-dir", default=None)
    ap_scan.add_argument("--format", choices=("csv", "json"), default="csv")
    ap_scan.add_argument("--timings", action="store_true",
                         help="fill the wall_time column (breaks byte determinism)")
    ap_scan.add_argument("--out", default="-")
    ap_scan.set_defaults(func=cmd_scan)

    ap_verify = sub.add_parser("verify", help="run the verification suite")
    ap_verify.add_argument("--suite", choices=("gl1", "representation", "main", "all"),
                           default="all")
    ap_verify.add_argument("--p", type=_int_list, default=[2, 3, 5])
    ap_verify.add_argument("--amax", type=int, default=3)
    ap_verify.add_argument("--nmax", type=int, default=3)
    ap_verify.add_argument("--tmax", type=int, default=None)
    ap_verify.add_argument("--perturb-eps", type=float, default=0.0,
                           help="inject a relative epsilon error (harness canary)")
    ap_verify.add_argument("--out", default="-")
    ap_verify.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    set_precision(args.precision_bits)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
