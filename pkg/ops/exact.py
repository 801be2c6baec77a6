# ops/exact.py
from typing import Any, Dict, Optional

from pareto_maxima import exact_continuous as ec
from pareto_maxima.csvio import CsvTable

from . import register_op
from ._payload import PayloadError, fail, get_choice, get_int, get_n, unwrap

METHODS = {
    "rec": "recurrence",
    "recurrence": "recurrence",
    "alt": "alternating_float",
    "alt-exact": "alternating_rational",
    "oracle": "nested_oracle",
    "asym": "fixed_k_asymptotic",
    "hwang": "hwang",
}

# methods that accept n given only through its logarithm
_LOG_N_OK = ("fixed_k_asymptotic", "hwang")


def _evaluate(method: str, k: int, n: Any) -> ec.ContinuousProbResult:
    if method == "fixed_k_asymptotic":
        return ec.p_fixed_k_asymptotic(k, n)
    if method == "hwang":
        return ec.p_hwang(k, n)
    m = n.as_int()
    if method == "alternating_float":
        return ec.p_alternating(k, m, "float_compensated")
    if method == "alternating_rational":
        return ec.p_alternating(k, m, "exact_rational")
    if method == "nested_oracle":
        return ec.p_nested_oracle(k, m)
    return ec.p_recurrence(k, m)


@register_op("exact")
def op_exact(task_or_payload: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """
    p_(k,n) for continuous coordinates.

    Payload fields:
      - k: int (required)
      - n: int | log10n: float | log_n: float (exactly one; logs only for asym/hwang)
      - method: rec | alt | alt-exact | oracle | asym | hwang (default rec)
    """
    try:
        payload = unwrap(task_or_payload, "exact")
        k = get_int(payload, "k", "exact")
        n = get_n(payload, "exact")
        method = get_choice(payload, "method", "exact", METHODS, "rec")
        if not n.is_exact and method not in _LOG_N_OK:
            raise PayloadError(f"exact: method {payload.get('method')!r} needs an integer --n")
    except PayloadError as e:
        return fail("exact", e)

    r = _evaluate(method, k, n)

    table = CsvTable(("k", "n", "method", "regime", "log_p", "flag"))
    log_p = r.log_p.log_value if r.log_p is not None else float("nan")
    table.add(r.k, str(r.n), r.method, r.regime or "", log_p, r.flag)
    return {"ok": True, "table": table, "flagged": bool(r.flag)}
