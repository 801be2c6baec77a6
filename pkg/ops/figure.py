# ops/figure.py
from typing import Any, Dict, Optional

from pareto_maxima.experiments import FIGURE_PANELS, run_figure

from . import register_op
from ._payload import PayloadError, fail, get_choice, get_seed, unwrap


@register_op("figure")
def op_figure(task_or_payload: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """
    Plot data for one panel.

    Payload fields:
      - panel: a | b | c (required)
      - seed: int, output: path
    """
    try:
        payload = unwrap(task_or_payload, "figure")
        if payload.get("panel") is None:
            raise PayloadError("figure: payload.panel (a, b or c) is required")
        panel = get_choice(payload, "panel", "figure", {p: p for p in FIGURE_PANELS}, "a")
        seed = get_seed(payload, "figure")
    except PayloadError as e:
        return fail("figure", e)

    output = payload.get("output")
    table = run_figure(panel, seed, output)
    return {"ok": True, "table": table, "flagged": False, "written": output}
