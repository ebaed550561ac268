"""Command-line front end: reference-table reproduction, certificate
optimization, and the verification suites.

Reports are machine-readable records (JSON lines by default, CSV on
request) with stable field names; exit codes are the only pass/fail
channel.  Reports carry no timestamps, so identical inputs produce
byte-identical files.

t0 accepts the keywords "ee" (= e^e) and "H" (= 3 000 175 332 800) as
well as plain numbers.  A flat key=value config file can preset any
option; command-line flags override it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

from .balls import PrecisionContext
from .optimize import (
    InfeasibleError,
    build_reference_certificate,
    optimize as run_optimize,
    reproduce_table,
)
from . import verify as ver
from . import tables

_CONFIG_KEYS = {
    "precision": int,
    "tolerance": float,
    "seed": int,
    "budget": int,
    "format": str,
    "out": str,
    "W": float,
    "t0": str,
    "cert": str,
    "tmax": float,
    "samples": int,
    "reopt": lambda s: s.strip().lower() in {"1", "true", "yes", "on"},
}


@dataclass
class RunConfig:
    precision: int = 128
    tolerance: float = 0.005
    seed: int = 0
    budget: Optional[int] = None   # None lets each objective pick its default
    format: str = "json"
    out: Optional[str] = None
    W: Optional[float] = None
    t0: Optional[str] = None
    cert: Optional[str] = None
    tmax: float = 1e4
    samples: int = 200
    reopt: bool = False

    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.precision)


def parse_config_file(path: str) -> dict:
    """Flat key=value file; '#' starts a comment.  Unknown keys are
    rejected before any computation."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, val = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = _CONFIG_KEYS[key](val)
    return out


# ---------------------------------------------------------------------------
# report I/O
# ---------------------------------------------------------------------------

def write_report(records: list, cfg: RunConfig) -> None:
    if cfg.format == "csv":
        payload = _to_csv(records)
    else:
        payload = "".join(json.dumps(r) + "\n" for r in records)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _to_csv(records: list) -> str:
    keys: list = []
    for rec in records:
        for k in rec:
            if k not in keys:
                keys.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow({k: json.dumps(rec.get(k)) for k in keys})
    return buf.getvalue()


def read_report(path: str) -> list:
    """Re-read a report written by write_report (either format)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.startswith("kind,") or text.split("\n", 1)[0].count(",") > 1 \
            and not text.lstrip().startswith("{"):
        rows = list(csv.DictReader(io.StringIO(text)))
        return [{k: json.loads(v) for k, v in row.items() if v != ""}
                for row in rows]
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def summarize_records(records: list) -> dict:
    """Stable summary used by the round-trip check."""
    kinds: dict = {}
    worst = 0.0
    for rec in records:
        kinds[rec.get("kind", "?")] = kinds.get(rec.get("kind", "?"), 0) + 1
        dev = rec.get("deviation")
        if isinstance(dev, (int, float)):
            worst = max(worst, abs(dev))
    return {"records": len(records), "kinds": dict(sorted(kinds.items())),
            "worst_deviation": worst}


def _echo(line: str) -> None:
    print(line, file=sys.stderr)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_table(n: int, cfg: RunConfig) -> int:
    rows = reproduce_table(n, cfg.ctx(), reoptimize=cfg.reopt,
                           budget=cfg.budget or 2000)
    records = []
    first_bad = None
    for row in rows:
        dev = row.get("deviation")
        ok = bool(row.get("valid")) and dev is not None and abs(dev) <= cfg.tolerance
        if "alpha_ok" in row:
            ok = ok and row["alpha_ok"]
        if "reopt_ok" in row:
            ok = ok and row["reopt_ok"]
        rec = {"kind": "table_row", "table": n, "row": row["row"],
               "printed": row["printed"], "computed": row["computed"],
               "deviation": dev, "within_tolerance": ok,
               "constraints": row.get("constraints", {})}
        for extra in ("alpha", "alpha1", "alpha_ok", "low_value", "high_value",
                      "reopt_value", "reopt_ok"):
            if extra in row:
                rec[extra] = row[extra]
        records.append(rec)
        _echo(f"table {n} row {row['row']}: "
              f"{'ok' if ok else 'OUT OF TOLERANCE'} "
              f"(deviation {dev if dev is None else f'{dev:+.4%}'})")
        if not ok and first_bad is None:
            first_bad = row["row"]
    write_report(records, cfg)
    if first_bad is not None:
        _echo(f"first out-of-tolerance row: {first_bad}")
        return 1
    return 0


def cmd_optimize(objective: str, cfg: RunConfig) -> int:
    fixed = {}
    if cfg.W is not None:
        fixed["W"] = cfg.W
    if cfg.t0 is not None:
        fixed["t0"] = tables.resolve_t0(cfg.t0)
    else:
        fixed["t0"] = tables.E_E
    if objective in ("q1", "q2") and "W" not in fixed:
        _echo(f"optimize {objective} requires --W")
        return 2
    try:
        result = run_optimize(objective, fixed, budget=cfg.budget,
                              ctx=cfg.ctx(), seed=cfg.seed)
    except InfeasibleError as exc:
        records = [{"kind": "infeasible", "objective": objective,
                    "fixed": {k: (v if not isinstance(v, float) or math.isfinite(v)
                                  else str(v)) for k, v in fixed.items()},
                    "report": exc.report}]
        write_report(records, cfg)
        _echo(f"infeasible: {exc}")
        return 2
    rec = result.as_record()
    rec["objective"] = objective
    rec["seed"] = cfg.seed
    write_report([rec], cfg)
    _echo(f"optimize {objective}: best value {result.best_value:.6g} "
          f"({result.evaluations} evaluations)")
    return 0


def cmd_verify(suite: str, cfg: RunConfig) -> int:
    ctx = cfg.ctx()
    records = []
    outcomes = []
    if suite == "lemma5":
        for check in (ver.check_lemma5_small_t(ctx),
                      ver.check_lemma5_large_t(ctx, samples=cfg.samples)):
            records.append(check.as_record())
            outcomes.append(check.outcome)
    elif suite == "lemma8":
        check = ver.check_lemma8_small_t(ctx)
        records.append(check.as_record())
        outcomes.append(check.outcome)
    elif suite == "cor4":
        check = ver.check_corollary4_range(ctx)
        records.append(check.as_record())
        outcomes.append(check.outcome)
    elif suite == "trig":
        rep = ver.trig_criteria(ver.TrigPoly((3.0, 4.0, 1.0)))
        rec = rep.as_record()
        ok = rep.nonneg and rep.reciprocal_style and rep.ratio == 0.75
        rec["expected_identity"] = ok
        records.append(rec)
        outcomes.append("certified" if ok else "failed")
        for degree in (2, 3, 4):
            hits = ver.trig_search(degree, grid_resolution=0.05)
            records.append({"kind": "trig_search", "degree": degree,
                            "grid_resolution": 0.05, "hits": len(hits),
                            "polynomials": [list(p.coefficients) for p in hits]})
            outcomes.append("certified" if not hits else "failed")
    elif suite == "spot":
        if not cfg.cert:
            _echo("verify spot requires --cert")
            return 2
        cert = build_reference_certificate(cfg.cert, ctx)
        report = ver.spot_check(cert, cfg.samples, cfg.tmax, ctx, seed=cfg.seed)
        rec = report.as_record()
        rec["cert"] = cfg.cert
        records.append(rec)
        outcomes.append("certified" if report.outcome == "passed" else "failed")
    else:
        _echo(f"unknown suite {suite!r}")
        return 2
    write_report(records, cfg)
    for rec, outcome in zip(records, outcomes):
        _echo(f"verify {suite}: {rec.get('description', rec.get('kind'))} "
              f"-> {outcome}")
    if any(o == "failed" for o in outcomes):
        witness = next((r.get("witness") for r in records if r.get("witness")),
                       None)
        _echo(f"witness: {witness}")
        return 1
    if any(o == "inconclusive" for o in outcomes):
        return 3
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value config file")
    common.add_argument("--precision", type=int, help="working precision bits")
    common.add_argument("--tolerance", type=float,
                        help="relative table-matching tolerance")
    common.add_argument("--seed", type=int, help="sampling seed")
    common.add_argument("--budget", type=int, help="optimizer evaluation budget")
    common.add_argument("--format", choices=("json", "csv"), dest="fmt")
    common.add_argument("--out", help="report file path (default stdout)")

    parser = argparse.ArgumentParser(
        prog="zetabounds",
        description="Derive, optimize, and numerically certify explicit "
                    "log t/loglog t bounds for |zeta'/zeta| and |1/zeta| "
                    "near the 1-line.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", parents=[common],
                             help="reproduce a reference table")
    p_table.add_argument("n", type=int)
    p_table.add_argument("--reopt", action="store_true",
                         help="also re-optimize each row")

    p_opt = sub.add_parser("optimize", parents=[common],
                           help="minimize a certificate objective")
    p_opt.add_argument("objective", choices=("q1", "k1", "q2", "k2"))
    p_opt.add_argument("--W", type=float)
    p_opt.add_argument("--t0")

    p_ver = sub.add_parser("verify", parents=[common],
                           help="run a verification suite")
    p_ver.add_argument("suite", choices=("lemma5", "lemma8", "cor4", "trig",
                                         "spot"))
    p_ver.add_argument("--cert", help="certificate name for spot checks, "
                                      "e.g. k2-500 or r1-w22")
    p_ver.add_argument("--tmax", type=float)
    p_ver.add_argument("--samples", type=int)
    return parser


def _merge_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        for key, val in parse_config_file(args.config).items():
            setattr(cfg, "format" if key == "format" else key, val)
    for attr, cli_name in (("precision", "precision"), ("tolerance", "tolerance"),
                           ("seed", "seed"), ("budget", "budget"),
                           ("format", "fmt"), ("out", "out")):
        val = getattr(args, cli_name, None)
        if val is not None:
            setattr(cfg, attr, val)
    for attr in ("W", "t0", "cert", "tmax", "samples"):
        val = getattr(args, attr, None)
        if val is not None:
            setattr(cfg, attr, val)
    if getattr(args, "reopt", False):
        cfg.reopt = True
    if cfg.precision < 64:
        raise ValueError("precision must be at least 64 bits")
    if not 0 < cfg.tolerance < 1:
        raise ValueError("tolerance must lie in (0, 1)")
    return cfg


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
    except (ValueError, OSError) as exc:
        parser.error(str(exc))
    if args.command == "table":
        if not 1 <= args.n <= 6:
            parser.error(f"no table {args.n}; choose 1-6")
        return cmd_table(args.n, cfg)
    if args.command == "optimize":
        return cmd_optimize(args.objective, cfg)
    if args.command == "verify":
        return cmd_verify(args.suite, cfg)
    parser.error("unknown command")
    return 2


if __name__ == "__main__":
    sys.exit(main())
