#!/usr/bin/env python3
from __future__ import annotations

import argparse
import sys
import time
import traceback
from typing import Any, Dict, List, Optional

import numpy as np
import scipy

from ops import list_ops
from ops_loader import describe_ops, load_ops
from pareto_maxima import __version__
from pareto_maxima.config import _env_bool, default_seed
from pareto_maxima.errors import ConfigError, DomainError, ParetoError
from pareto_maxima.logutil import log, log_ratelimited
from worker_sizing import build_worker_profile

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_FLAGGED = 3

# full tracebacks on unexpected failures
DEBUG = _env_bool("PARETO_DEBUG", False)

DIST_HELP = "uniform | exp:<rate> | bern:<p> | disc:<v1:p1,v2:p2,...>"


# ---------------- parser ----------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=default_seed(), help="root seed (env PARETO_SEED)")
    p.add_argument("--output", "-o", default=None, help="CSV path (default stdout)")
    p.add_argument("--strict", action="store_true", help="exit 3 when any result carries a numeric flag")
    p.add_argument("--workers", type=int, default=None, help="threads (default from worker sizing)")


def _n_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--log10n", type=float)
    g.add_argument("--log-n", dest="log_n", type=float, help="natural log of n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pareto-maxima",
        description="Probability that a given vector is a Pareto maximum among n iid vectors.",
        epilog=describe_ops(),
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"pareto-maxima {__version__} (numpy {np.__version__}, scipy {scipy.__version__}, python {sys.version.split()[0]})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma", help="gamma = -E log S(X)")
    p.add_argument("--dist", required=True, help=DIST_HELP)
    p.add_argument("--method", default="closed", choices=["closed", "quad", "mc"])
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--reps", type=int, default=100_000)
    _common(p)

    p = sub.add_parser("exact", help="p_(k,n) for continuous coordinates")
    p.add_argument("--k", type=int, required=True)
    _n_args(p)
    p.add_argument("--method", default="rec", choices=["rec", "alt", "alt-exact", "oracle", "asym", "hwang"])
    _common(p)

    p = sub.add_parser("bernoulli", help="exact Bernoulli(p) quantities")
    p.add_argument("--k", type=int, required=True)
    _n_args(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--kind", default="strong", choices=["strong", "weak", "pair", "var", "asym"])
    _common(p)

    p = sub.add_parser("simulate", help="Monte Carlo estimates")
    p.add_argument("--dist", default=None, help=DIST_HELP)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--kind", default="strong", choices=["strong", "weak"])
    p.add_argument("--stat", default="p", choices=["p", "M-ratio", "ferguson", "L-mean", "front-size"])
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--sampler", default="direct", choices=["direct", "max_cdf"])
    _common(p)

    p = sub.add_parser("sweep", help="rows over a (c, n) grid")
    p.add_argument("--dist", required=True, help=DIST_HELP)
    p.add_argument("--c", required=True, help="comma list of positive reals")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", help="comma list of integers")
    g.add_argument("--log10n", help="comma list of log10(n)")
    p.add_argument("--k-rule", dest="k_rule", default="ceil_c_logn", choices=["ceil_c_logn", "floor_c_logn", "c_over_gamma"])
    p.add_argument("--methods", default=None, help="comma list, e.g. rec,hwang or bern-strong,bern-weak")
    _common(p)

    p = sub.add_parser("figure", help="plot data for one figure panel")
    p.add_argument("--panel", required=True, choices=["a", "b", "c"])
    _common(p)

    return parser


# ---------------- runtime ----------------

def _payload_of(args: argparse.Namespace, profile: Dict[str, Any]) -> Dict[str, Any]:
    payload = {k: v for k, v in vars(args).items() if v is not None and k not in ("command", "strict")}
    if "workers" not in payload:
        key = "sweep_workers" if args.command == "sweep" else "mc_workers"
        payload["workers"] = int(profile["workers"][key])
    payload["max_elements"] = int(profile["memory"]["max_matrix_elements"])
    return payload


def _report_failure(op: str, e: BaseException) -> None:
    err = {"type": type(e).__name__, "message": str(e)}
    log_ratelimited(f"exec:{op}:{err['type']}", "cli", f"FAIL op={op} err={err}")
    if DEBUG:
        print(traceback.format_exc(limit=12), file=sys.stderr, flush=True)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    op = args.command

    start_ts = time.time()
    try:
        fn = load_ops([op])[op]
        out = fn(_payload_of(args, build_worker_profile()))
    except (ConfigError, DomainError) as e:
        _report_failure(op, e)
        return EXIT_CONFIG
    except ParetoError as e:
        _report_failure(op, e)
        return EXIT_FAILED

    if not out.get("ok"):
        _report_failure(op, ConfigError(out.get("error", "unknown error")))
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG

    try:
        if not out.get("written"):
            out["table"].write(args.output)
    except ParetoError as e:
        _report_failure(op, e)
        return EXIT_FAILED

    duration_ms = (time.time() - start_ts) * 1000.0
    log("cli", f"ok op={op} rows={len(out['table'].rows)} ms={duration_ms:.1f} enabled={list_ops()}")

    if args.strict and out.get("flagged"):
        log("cli", f"op={op} produced flagged results and --strict is set")
        return EXIT_FLAGGED
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
