"""Command-line surface: evaluation, verification, sweeps, limit tables.

Exit codes follow one convention everywhere:

    0  success / all statuses verified
    1  an identity check came back violated (enclosures disjoint)
    2  bad input: malformed flags, precondition failures, config errors
    3  inconclusive: a truncation cap stopped a series before the
       requested tolerance was certified

Reports are deterministic byte for byte for identical inputs: records are
sorted after evaluation (never emitted in completion order) and every
rational is serialized as an exact "p/q" string.  Decimal renderings are
display-only and always labeled with their digit count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__
from .identities import (
    build_identity,
    cross_check,
    evaluate_identity,
    q_euler_terms,
    sum_terms,
    verify_proof_sums,
)
from .poly import rf_equal
from .scalars import Rational, as_rational, decimal_str, rat_parse, rat_str
from .series import (
    DEFAULT_MAX_TERMS,
    ClassicalZeta,
    Composition,
    Phi,
    QZeta,
    TruncationLimitError,
    evaluate_target,
    zeta_classical,
)
from .symbolic import (
    build_lemma,
    derive_lemma_by_operator,
    verify_lemma,
    verify_parfrac,
    verify_parfrac_substitution,
)

RECORD_FIELDS = (
    "identity",
    "s",
    "t",
    "q",
    "status",
    "lhs_lo",
    "lhs_hi",
    "rhs_lo",
    "rhs_hi",
    "width",
    "max_truncation",
)

IDENTITY_KINDS = ("cross", "euler", "qdecomp", "stuffle")


# --------------------------------------------------------------------------
# Small parsing helpers


def _parse_tol(text: str):
    tol = rat_parse(text)
    if tol <= 0:
        raise ValueError(f"tolerance must be > 0, got {text!r}")
    return tol


def _parse_q(text: str):
    q = rat_parse(text)
    if not 0 < q < 1:
        raise ValueError(f"q must lie strictly between 0 and 1, got {text!r}")
    return q


def _positive_int(text: str, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ValueError(f"{what} must be an integer, got {text!r}") from None
    if value < 1:
        raise ValueError(f"{what} must be >= 1, got {value}")
    return value


def _digits_for(tol) -> int:
    """Enough decimal places to make an interval of width tol visible."""
    digits = 2
    while Rational(1, 10**digits) > tol and digits < 60:
        digits += 1
    return digits + 2


def _interval_str(enclosure, digits: int) -> str:
    lo = decimal_str(enclosure.lo, digits, "floor")
    hi = decimal_str(enclosure.hi, digits, "ceil")
    return f"[{lo}, {hi}] ({digits} digits, outward)"


# --------------------------------------------------------------------------
# Record plumbing


def _enclosure_record(identity, s, t, q, report):
    lhs, rhs = report.lhs_enclosure, report.rhs_enclosure
    width = max(lhs.width, rhs.width)
    return {
        "identity": identity,
        "s": s,
        "t": t,
        "q": None if q is None else rat_str(q),
        "status": report.status,
        "lhs_lo": rat_str(lhs.lo),
        "lhs_hi": rat_str(lhs.hi),
        "rhs_lo": rat_str(rhs.lo),
        "rhs_hi": rat_str(rhs.hi),
        "width": rat_str(width),
        "max_truncation": report.max_truncation,
    }


def _bare_record(identity, s, t, status):
    return {
        "identity": identity,
        "s": s,
        "t": t,
        "q": None,
        "status": status,
        "lhs_lo": None,
        "lhs_hi": None,
        "rhs_lo": None,
        "rhs_hi": None,
        "width": None,
        "max_truncation": None,
    }


def _json_report(config: dict, records) -> str:
    payload = {
        "tool_version": __version__,
        "config": config,
        "records": list(records),
    }
    return json.dumps(payload, indent=2) + "\n"


def _csv_report(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for record in records:
        writer.writerow(
            "" if record[f] is None else record[f] for f in RECORD_FIELDS
        )
    return buf.getvalue()


_STATUS_EXIT = {"verified": 0, "violated": 1, "inconclusive": 3}


def _records_exit(records) -> int:
    statuses = {r["status"] for r in records}
    if "violated" in statuses:
        return 1
    if "inconclusive" in statuses:
        return 3
    return 0


# --------------------------------------------------------------------------
# eval


def cmd_eval(args) -> int:
    if (args.comp is None) == (args.phi is None):
        raise ValueError("exactly one of --comp and --phi is required")
    tol = _parse_tol(args.tol)
    digits = args.digits
    if digits < 0:
        raise ValueError("--digits must be >= 0")
    if args.phi is not None:
        if args.classical:
            raise ValueError("--phi has no classical counterpart here; use --comp")
        target = Phi(_positive_int(args.phi, "--phi"))
    else:
        comp = Composition.parse(args.comp)
        target = ClassicalZeta(comp) if args.classical else QZeta(comp)
    q = None
    if args.classical:
        if args.q is not None:
            raise ValueError("--classical takes no --q")
    else:
        if args.q is None:
            raise ValueError("--q is required (or pass --classical)")
        q = _parse_q(args.q)
    result = evaluate_target(
        target, q, tol, max_terms=args.max_terms, engine=args.engine
    )
    enc = result.enclosure
    print(f"target  {target.label()}")
    if q is not None:
        print(f"q       {rat_str(q)}")
    print(f"lo      = {rat_str(enc.lo)}")
    print(f"hi      = {rat_str(enc.hi)}")
    print(f"mid     ~ {decimal_str(enc.midpoint, digits)} ({digits} digits)")
    print(f"width   = {rat_str(enc.width)}")
    print(f"terms   {result.terms}")
    return 0


# --------------------------------------------------------------------------
# verify


def _print_or_json(args, config: dict, records, lines) -> None:
    if args.json:
        sys.stdout.write(_json_report(config, records))
    else:
        for line in lines:
            print(line)


def _verify_numeric(args, kind: str) -> int:
    tol = _parse_tol(args.tol)
    q = _parse_q(args.q) if kind != "euler" else None
    if kind == "cross":
        report = cross_check(
            args.s, args.t, q, tol, max_terms=args.max_terms, engine=args.engine
        )
    else:
        inst = build_identity(kind, args.s, args.t)
        report = evaluate_identity(
            inst, q=q, tol=tol, max_terms=args.max_terms, engine=args.engine
        )
    record = _enclosure_record(kind, args.s, args.t, q, report)
    config = {
        "command": f"verify {kind}",
        "s": args.s,
        "t": args.t,
        "q": None if q is None else rat_str(q),
        "tol": rat_str(tol),
        "max_terms": args.max_terms,
        "engine": args.engine,
    }
    digits = _digits_for(tol)
    lines = [
        f"{kind}({args.s},{args.t})"
        + ("" if q is None else f" at q = {rat_str(q)}")
        + f", tol = {rat_str(tol)}",
        f"lhs in {_interval_str(report.lhs_enclosure, digits)}",
        f"rhs in {_interval_str(report.rhs_enclosure, digits)}",
        f"max truncation {report.max_truncation} terms",
        f"status: {report.status}",
    ]
    _print_or_json(args, config, [record], lines)
    return _STATUS_EXIT[report.status]


def _verify_symbolic(args, kind: str) -> int:
    if kind == "lemma":
        ok = verify_lemma(args.s, args.t)
        what = "exact decomposition of 1/(x^s y^t) over the kernel"
    elif kind == "parfrac":
        ok = verify_parfrac(args.s, args.t) and verify_parfrac_substitution(
            args.s, args.t
        )
        what = "partial-fraction identity (direct and substitution routes)"
    elif kind == "operator":
        ok = rf_equal(
            derive_lemma_by_operator(args.s, args.t),
            build_lemma(args.s, args.t).rhs,
        )
        what = "derivative-operator route matches the direct construction"
    else:  # pragma: no cover - guarded by the parser
        raise ValueError(f"unknown symbolic check {kind!r}")
    status = "verified" if ok else "violated"
    record = _bare_record(kind, args.s, args.t, status)
    config = {"command": f"verify {kind}", "s": args.s, "t": args.t}
    lines = [f"{kind}({args.s},{args.t}): {what}", f"status: {status}"]
    _print_or_json(args, config, [record], lines)
    return 0 if ok else 1


def _verify_proof_sums(args) -> int:
    q = _parse_q(args.q)
    report = verify_proof_sums(
        args.s, args.t, args.a, args.b, args.j, q, args.N, max_terms=args.max_terms
    )
    records = []
    for name, check in (("proof-sum-S", report.s_check), ("proof-sum-T", report.t_check)):
        records.append(
            {
                "identity": name,
                "s": args.s,
                "t": args.t,
                "q": rat_str(q),
                "status": "verified" if check.ok else "violated",
                "lhs_lo": rat_str(check.low),
                "lhs_hi": rat_str(check.high),
                "rhs_lo": rat_str(check.value),
                "rhs_hi": rat_str(check.value),
                "width": rat_str(check.slack),
                "max_truncation": report.max_truncation,
            }
        )
    config = {
        "command": "verify proof-sums",
        "s": args.s,
        "t": args.t,
        "a": args.a,
        "b": args.b,
        "j": args.j,
        "q": rat_str(q),
        "N": args.N,
        "max_terms": args.max_terms,
    }
    lines = [
        f"proof sums (s={args.s}, t={args.t}, a={args.a}, b={args.b}, "
        f"j={args.j}) at q = {rat_str(q)}, N = {args.N}"
    ]
    for check in (report.s_check, report.t_check):
        lines.append(
            f"{check.label}: value ~ {decimal_str(check.value, 12)} in "
            f"[{decimal_str(check.low, 12, 'floor')}, {decimal_str(check.high, 12, 'ceil')}]"
            f" (12 digits, slack {decimal_str(check.slack, 12, 'ceil')}):"
            f" {'ok' if check.ok else 'FAILED'}"
        )
    lines.append(f"status: {report.status}")
    _print_or_json(args, config, records, lines)
    return 0 if report.status == "verified" else 1


def cmd_verify(args) -> int:
    kind = args.identity
    if kind in ("qdecomp", "stuffle", "euler", "cross"):
        return _verify_numeric(args, kind)
    if kind in ("lemma", "parfrac", "operator"):
        return _verify_symbolic(args, kind)
    return _verify_proof_sums(args)


# --------------------------------------------------------------------------
# sweep


@dataclass(frozen=True)
class SweepConfig:
    """Validated sweep plan: grid ranges, q points, tolerance, identities."""

    s_range: tuple
    t_range: tuple
    q_values: tuple
    tol: Rational
    identities: tuple
    output: str
    format: str
    workers: int
    max_terms: int
    engine: str


_CONFIG_KEYS = (
    "s_min",
    "s_max",
    "t_min",
    "t_max",
    "q_values",
    "tol",
    "identities",
    "output",
    "format",
    "workers",
    "max_terms",
    "engine",
)


def read_config_file(path: str) -> dict:
    """Line-oriented key=value format; '#' starts a comment anywhere."""
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ValueError(f"cannot read config file: {exc}") from None
    data = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        data[key] = value.strip()
    return data


def build_sweep_config(args) -> SweepConfig:
    settings = {
        "s_min": "2",
        "s_max": "3",
        "t_min": "2",
        "t_max": "3",
        "q_values": "1/2",
        "tol": "1e-12",
        "identities": "",
        "output": "-",
        "format": "json",
        "workers": "1",
        "max_terms": str(DEFAULT_MAX_TERMS),
        "engine": "exact",
    }
    if args.config:
        settings.update(read_config_file(args.config))
    overrides = {
        "s_min": args.s_min,
        "s_max": args.s_max,
        "t_min": args.t_min,
        "t_max": args.t_max,
        "q_values": args.q,
        "tol": args.tol,
        "identities": args.identities,
        "output": args.output,
        "format": args.format,
        "workers": args.workers,
        "max_terms": args.max_terms,
        "engine": args.engine,
    }
    for key, value in overrides.items():
        if value is not None:
            settings[key] = str(value)

    s_range = (int(settings["s_min"]), int(settings["s_max"]))
    t_range = (int(settings["t_min"]), int(settings["t_max"]))
    for name, (lo, hi) in (("s", s_range), ("t", t_range)):
        if not (2 <= lo <= hi <= 12):
            raise ValueError(
                f"{name} range must satisfy 2 <= min <= max <= 12, got {lo}..{hi}"
            )
    q_values = tuple(
        _parse_q(part.strip())
        for part in settings["q_values"].split(",")
        if part.strip()
    )
    if not q_values:
        raise ValueError("at least one q value is required")
    identities = tuple(
        sorted({part.strip() for part in settings["identities"].split(",") if part.strip()})
    )
    if not identities:
        raise ValueError("empty identity set (pass --identities or set identities=)")
    unknown = [name for name in identities if name not in IDENTITY_KINDS]
    if unknown:
        raise ValueError(
            f"unknown identities {unknown}; choose from {list(IDENTITY_KINDS)}"
        )
    fmt = settings["format"]
    if fmt not in ("json", "csv"):
        raise ValueError(f"format must be json or csv, got {fmt!r}")
    return SweepConfig(
        s_range=s_range,
        t_range=t_range,
        q_values=q_values,
        tol=_parse_tol(settings["tol"]),
        identities=identities,
        output=settings["output"],
        format=fmt,
        workers=_positive_int(settings["workers"], "workers"),
        max_terms=_positive_int(settings["max_terms"], "max_terms"),
        engine=settings["engine"],
    )


def _sweep_point(job, cfg: SweepConfig):
    identity, s, t, q = job
    try:
        if identity == "cross":
            report = cross_check(
                s, t, q, cfg.tol, max_terms=cfg.max_terms, engine=cfg.engine
            )
        else:
            inst = build_identity(identity, s, t)
            report = evaluate_identity(
                inst, q=q, tol=cfg.tol, max_terms=cfg.max_terms, engine=cfg.engine
            )
    except TruncationLimitError:
        record = _bare_record(identity, s, t, "inconclusive")
        record["q"] = None if q is None else rat_str(q)
        record["max_truncation"] = cfg.max_terms
        return record
    return _enclosure_record(identity, s, t, q, report)


def run_sweep(cfg: SweepConfig):
    """Evaluate the full grid; records come back sorted by (identity, s, t, q)."""
    jobs = []
    for identity in cfg.identities:
        for s in range(cfg.s_range[0], cfg.s_range[1] + 1):
            for t in range(cfg.t_range[0], cfg.t_range[1] + 1):
                if identity == "euler":
                    jobs.append((identity, s, t, None))
                else:
                    for q in cfg.q_values:
                        jobs.append((identity, s, t, q))
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(lambda job: _sweep_point(job, cfg), jobs))
    else:
        records = [_sweep_point(job, cfg) for job in jobs]
    records.sort(
        key=lambda r: (
            r["identity"],
            r["s"],
            r["t"],
            Rational(-1) if r["q"] is None else rat_parse(r["q"]),
        )
    )
    return records


def _config_json(cfg: SweepConfig) -> dict:
    return {
        "command": "sweep",
        "s_range": list(cfg.s_range),
        "t_range": list(cfg.t_range),
        "q_values": [rat_str(q) for q in cfg.q_values],
        "tol": rat_str(cfg.tol),
        "identities": list(cfg.identities),
        "output": cfg.output,
        "format": cfg.format,
        "workers": cfg.workers,
        "max_terms": cfg.max_terms,
        "engine": cfg.engine,
    }


def cmd_sweep(args) -> int:
    cfg = build_sweep_config(args)
    records = run_sweep(cfg)
    if cfg.format == "json":
        payload = _json_report(_config_json(cfg), records)
    else:
        payload = _csv_report(records)
    if cfg.output == "-":
        sys.stdout.write(payload)
    else:
        try:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(payload)
        except OSError as exc:
            raise ValueError(f"cannot write report: {exc}") from None
    counts = {"verified": 0, "violated": 0, "inconclusive": 0}
    for record in records:
        counts[record["status"]] += 1
    where = "" if cfg.output == "-" else f" -> {cfg.output}"
    print(
        f"{len(records)} records: {counts['verified']} verified, "
        f"{counts['violated']} violated, {counts['inconclusive']} inconclusive{where}",
        file=sys.stderr,
    )
    return _records_exit(records)


# --------------------------------------------------------------------------
# limit


def cmd_limit(args) -> int:
    if args.s < 2 or args.t < 2:
        raise ValueError(f"limit requires s >= 2 and t >= 2, got ({args.s}, {args.t})")
    if args.steps < 1:
        raise ValueError(f"--steps must be >= 1, got {args.steps}")
    tol = _parse_tol(args.tol)
    quarter = tol / 4
    classical = zeta_classical((args.s,), quarter, max_terms=args.max_terms) * (
        zeta_classical((args.t,), quarter, max_terms=args.max_terms)
    )
    classical_mid = classical.midpoint
    inst = q_euler_terms(args.s, args.t)
    print(
        f"classical zeta({args.s})*zeta({args.t}) ~ "
        f"{decimal_str(classical_mid, 12)} (12 digits)"
    )
    print(f"{'m':>3}  {'q':>12}  {'product_mid':>16}  {'gap':>16}")
    gaps = []
    for m in range(1, args.steps + 1):
        q_m = Rational(2**m - 1, 2**m)
        enc, _ = sum_terms(
            inst.terms, q_m, tol, max_terms=args.max_terms, engine="dyadic"
        )
        mid = enc.midpoint
        gap = abs(mid - classical_mid)
        gaps.append(gap)
        print(
            f"{m:>3}  {rat_str(q_m):>12}  {decimal_str(mid, 12):>16}  "
            f"{decimal_str(gap, 12):>16}"
        )
    trend_ok = len(gaps) == 1 or gaps[-1] < gaps[0]
    print(
        f"first gap {decimal_str(gaps[0], 12)}, last gap {decimal_str(gaps[-1], 12)}: "
        f"{'shrinking' if trend_ok else 'NOT shrinking'}"
    )
    return 0 if trend_ok else 1


# --------------------------------------------------------------------------
# Parser assembly


def _add_eval(sub):
    p = sub.add_parser("eval", help="enclose one zeta-type value")
    p.add_argument("--comp", help="composition, e.g. 2 or 3,1,2")
    p.add_argument("--phi", help="exponent S of the auxiliary phi series")
    p.add_argument("--q", help="rational q in (0,1), e.g. 1/2")
    p.add_argument("--classical", action="store_true", help="classical values (no q)")
    p.add_argument("--tol", default="1e-12", help="enclosure width target")
    p.add_argument("--digits", type=int, default=15, help="decimal display digits")
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p.add_argument("--engine", choices=("exact", "dyadic"), default="exact")
    p.set_defaults(func=cmd_eval)


def _add_verify(sub):
    p = sub.add_parser("verify", help="check one identity instance")
    vsub = p.add_subparsers(dest="identity", required=True)

    def common(sp, q=False, numeric=False):
        sp.add_argument("--s", type=int, required=True)
        sp.add_argument("--t", type=int, required=True)
        if q:
            sp.add_argument("--q", required=True, help="rational q in (0,1)")
        if numeric:
            sp.add_argument("--tol", default="1e-12")
            sp.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
            sp.add_argument("--engine", choices=("exact", "dyadic"), default="exact")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=cmd_verify)

    for kind in ("qdecomp", "stuffle", "cross"):
        common(vsub.add_parser(kind), q=True, numeric=True)
    euler_parser = vsub.add_parser("euler")
    common(euler_parser, numeric=True)
    # Classical truncations grow like tol^(-1/(s-1)), so the default that is
    # comfortable for the q-series would hit the term cap here.
    euler_parser.set_defaults(tol="1e-8")
    for kind in ("lemma", "parfrac", "operator"):
        common(vsub.add_parser(kind))
    ps = vsub.add_parser("proof-sums")
    ps.add_argument("--s", type=int, required=True)
    ps.add_argument("--t", type=int, required=True)
    ps.add_argument("--q", required=True)
    ps.add_argument("--N", type=int, required=True)
    ps.add_argument("--a", type=int, default=0)
    ps.add_argument("--b", type=int, default=0)
    ps.add_argument("--j", type=int, default=1)
    ps.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    ps.add_argument("--json", action="store_true")
    ps.set_defaults(func=cmd_verify)


def _add_sweep(sub):
    p = sub.add_parser("sweep", help="verify a grid of identities, emit a report")
    p.add_argument("--config", help="key=value config file ('#' comments)")
    p.add_argument("--s-min", type=int)
    p.add_argument("--s-max", type=int)
    p.add_argument("--t-min", type=int)
    p.add_argument("--t-max", type=int)
    p.add_argument("--q", help="comma-separated q values, e.g. 1/2,3/4")
    p.add_argument("--tol")
    p.add_argument(
        "--identities", help="comma-separated subset of cross,euler,qdecomp,stuffle"
    )
    p.add_argument("--output", help="report path, or - for standard output")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--workers", type=int)
    p.add_argument("--max-terms", type=int)
    p.add_argument("--engine", choices=("exact", "dyadic"))
    p.set_defaults(func=cmd_sweep)


def _add_limit(sub):
    p = sub.add_parser("limit", help="q -> 1 trend of the product toward classical")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--steps", type=int, required=True, help="rows m = 1..steps")
    p.add_argument("--tol", default="1e-6")
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p.set_defaults(func=cmd_limit)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qzeta",
        description="Rigorous enclosures and identity verification for "
        "q-deformed multiple zeta values.",
    )
    parser.add_argument("--version", action="version", version=f"qzeta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_eval(sub)
    _add_verify(sub)
    _add_sweep(sub)
    _add_limit(sub)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TruncationLimitError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
