# ops/gamma.py
from typing import Any, Dict, Optional

from pareto_maxima.csvio import CsvTable
from pareto_maxima.gamma_functional import gamma

from . import register_op
from ._payload import PayloadError, fail, get_choice, get_dist, get_float, get_int, get_seed, get_workers, unwrap

METHODS = {
    "closed": "closed_form",
    "closed_form": "closed_form",
    "quad": "quadrature",
    "quadrature": "quadrature",
    "mc": "monte_carlo",
    "monte_carlo": "monte_carlo",
}


@register_op("gamma")
def op_gamma(task_or_payload: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """
    gamma = -E log S(X) for one law.

    Payload fields:
      - dist: str (required), e.g. "bern:0.5"
      - method: closed | quad | mc (default closed)
      - tol: float (quad, default 1e-8)
      - reps: int (mc, default 100000)
      - seed: int (mc)
    """
    try:
        payload = unwrap(task_or_payload, "gamma")
        d = get_dist(payload, "gamma")
        method = get_choice(payload, "method", "gamma", METHODS, "closed")
        tol = get_float(payload, "tol", "gamma", default=1e-8)
        reps = get_int(payload, "reps", "gamma", default=100_000)
        seed = get_seed(payload, "gamma")
        workers = get_workers(payload, "gamma")
    except PayloadError as e:
        return fail("gamma", e)

    est = gamma(d, method, tol=tol, reps=reps, seed=seed, workers=workers)

    table = CsvTable(("method", "value", "std_error"))
    table.comment(f"dist={d.label}")
    if method == "monte_carlo":
        table.comment(f"reps={reps} seed={seed}")
    table.add(est.method, est.value, est.std_error)
    return {"ok": True, "table": table, "flagged": False}
