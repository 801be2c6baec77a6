# ops/sweep.py
from typing import Any, Dict, List, Optional

from pareto_maxima.exact_continuous import REGIMES
from pareto_maxima.experiments import K_RULES, SweepConfig, run_sweep
from pareto_maxima.logspace import HugeN

from . import register_op
from ._payload import PayloadError, fail, get_choice, get_dist, get_seed, get_workers, split_list, unwrap


def _n_grid(payload: Dict[str, Any]) -> List[HugeN]:
    ns = payload.get("n")
    logs = payload.get("log10n")
    if (ns is None) == (logs is None):
        raise PayloadError("sweep: give exactly one of n, log10n (comma lists)")
    try:
        if ns is not None:
            return [HugeN.of(int(float(v))) for v in split_list(ns, "n", "sweep")]
        return [HugeN.from_log10(float(v)) for v in split_list(logs, "log10n", "sweep")]
    except ValueError as e:
        raise PayloadError(f"sweep: bad n grid: {e}") from None


@register_op("sweep")
def op_sweep(task_or_payload: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """
    Rows c,k,log10_n,method,log_p,flag over a (c, n) grid.

    Payload fields:
      - dist: str (required)
      - c: comma list of positive reals (required)
      - n: comma list of ints | log10n: comma list of reals
      - k_rule: ceil_c_logn | floor_c_logn | c_over_gamma (default ceil_c_logn)
      - methods: comma list (default rec for continuous, bern-strong for Bernoulli)
      - seed: int, output: path
    """
    try:
        payload = unwrap(task_or_payload, "sweep")
        d = get_dist(payload, "sweep")
        try:
            c_values = [float(c) for c in split_list(payload.get("c"), "c", "sweep")]
        except ValueError as e:
            raise PayloadError(f"sweep: bad c list: {e}") from None
        if not c_values:
            raise PayloadError("sweep: payload.c is required")
        n_grid = _n_grid(payload)
        k_rule = get_choice(payload, "k_rule", "sweep", {r: r for r in K_RULES}, "ceil_c_logn")
        default_method = "rec" if d.is_continuous else "bern-strong"
        methods = split_list(payload.get("methods", default_method), "methods", "sweep")
        seed = get_seed(payload, "sweep")
        workers = get_workers(payload, "sweep")
    except PayloadError as e:
        return fail("sweep", e)

    cfg = SweepConfig(
        dist=d,
        c_values=c_values,
        n_grid=n_grid,
        k_rule=k_rule,
        methods=methods,
        seed=seed,
        output_path=payload.get("output"),
    )
    table = run_sweep(cfg, workers=workers)
    # a bare regime name is information, not a numeric flag
    flagged = any(f and f not in REGIMES for f in table.column("flag"))
    return {"ok": True, "table": table, "flagged": flagged, "written": cfg.output_path}
