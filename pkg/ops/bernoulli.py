# ops/bernoulli.py
from typing import Any, Dict, Optional

from pareto_maxima import exact_bernoulli as eb
from pareto_maxima.csvio import CsvTable

from . import register_op
from ._payload import PayloadError, fail, get_choice, get_float, get_int, get_n, unwrap

KINDS = {
    "strong": "strong",
    "weak": "weak",
    "pair": "pair",
    "var": "variance_raw",
    "asym": "strong_asym",
}


@register_op("bernoulli")
def op_bernoulli(task_or_payload: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """
    Exact log-space Bernoulli(p) quantities.

    Payload fields:
      - k: int (required)
      - n: int | log10n: float | log_n: float (exactly one; var needs an integer n)
      - p: float in (0,1) (required)
      - kind: strong | weak | pair | var | asym (default strong)
    """
    try:
        payload = unwrap(task_or_payload, "bernoulli")
        k = get_int(payload, "k", "bernoulli")
        n = get_n(payload, "bernoulli")
        p = get_float(payload, "p", "bernoulli")
        kind = get_choice(payload, "kind", "bernoulli", KINDS, "strong")
        if kind == "variance_raw" and not n.is_exact:
            raise PayloadError("bernoulli: kind var needs an integer --n")
    except PayloadError as e:
        return fail("bernoulli", e)

    if kind == "weak":
        r = eb.q_bernoulli(k, n, p)
    elif kind == "pair":
        r = eb.pair_prob(k, n, p)
    elif kind == "variance_raw":
        r = eb.variance_front_size(k, n.as_int(), p)
    elif kind == "strong_asym":
        r = eb.p_bernoulli_fixed_k_asymptotic(k, n, p)
    else:
        r = eb.p_bernoulli(k, n, p)

    table = CsvTable(("k", "log10_n", "p", "kind", "log_p_or_value", "flag"))
    table.comment(f"n={r.n}")
    table.add(r.k, r.n.log10, r.p, r.kind, r.reported, r.flag)
    return {"ok": True, "table": table, "flagged": bool(r.flag)}
