# ops/simulate.py
from typing import Any, Dict, Optional

from pareto_maxima import montecarlo as mc
from pareto_maxima.csvio import CsvTable
from pareto_maxima.gamma_functional import gamma_monte_carlo

from . import register_op
from ._payload import PayloadError, fail, get_choice, get_dist, get_float, get_int, get_seed, get_workers, unwrap

STATS = {"p": "p", "M-ratio": "M-ratio", "ferguson": "ferguson", "L-mean": "L-mean", "front-size": "front-size"}
KINDS = {"strong": "strong", "weak": "weak"}
SAMPLERS = {"direct": "direct", "max_cdf": "max_cdf"}

COLUMNS = ("stat", "k", "n", "estimate", "std_error", "reps", "seed")


@register_op("simulate")
def op_simulate(task_or_payload: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """
    Monte Carlo statistics.

    Payload fields:
      - stat: p | M-ratio | ferguson | L-mean | front-size (default p)
      - dist: str (required except for ferguson)
      - k: int (p, front-size: dimension; M-ratio: starting prefix width, default 32)
      - n: int (required except for L-mean)
      - reps: int (default 1000)
      - seed: int
      - kind: strong | weak (p only)
      - alpha: float, sampler: direct | max_cdf (ferguson only)
    """
    try:
        payload = unwrap(task_or_payload, "simulate")
        stat = get_choice(payload, "stat", "simulate", STATS, "p")
        reps = get_int(payload, "reps", "simulate", default=1000)
        seed = get_seed(payload, "simulate")
        workers = get_workers(payload, "simulate")
        d = None if stat == "ferguson" else get_dist(payload, "simulate")
        n = None if stat == "L-mean" else get_int(payload, "n", "simulate")
        if stat in ("p", "front-size"):
            k = get_int(payload, "k", "simulate")
            kind = get_choice(payload, "kind", "simulate", KINDS, "strong")
        elif stat == "M-ratio":
            k = get_int(payload, "k", "simulate", default=32)
        else:
            k = None
        if stat == "ferguson":
            alpha = get_float(payload, "alpha", "simulate", default=0.5)
            sampler = get_choice(payload, "sampler", "simulate", SAMPLERS, "direct")
    except PayloadError as e:
        return fail("simulate", e)

    table = CsvTable(COLUMNS)
    if d is not None:
        table.comment(f"dist={d.label}")

    if stat == "p":
        est = mc.estimate_p(d, k, n, reps, seed, kind, workers=workers)
        table.comment(f"kind={kind}")
        table.add(f"p-{kind}", k, n, est.estimate, est.std_error, est.reps, seed)
    elif stat == "M-ratio":
        budget = payload.get("max_elements")
        s = mc.estimate_M_over_logn(
            d, k, n, reps, seed, workers=workers, max_elements=None if budget is None else int(budget)
        )
        table.comment(f"median of M/log(n), bootstrap std error; prefix widenings={s.widenings}")
        table.add("M-ratio", k, n, s.median, s.std_error, s.reps, seed)
    elif stat == "ferguson":
        ratios = mc.ferguson_max_ratio(alpha, n, reps, seed, sampler=sampler, workers=workers)
        s = mc.summarize_ratios(ratios, seed)
        table.comment(f"alpha={alpha!r} sampler={sampler} limit={mc.ferguson_limit(alpha)!r}")
        table.add("ferguson", "", n, s.median, s.std_error, s.reps, seed)
    elif stat == "front-size":
        f = mc.estimate_front_size(d, k, n, reps, seed, workers=workers)
        table.comment("size of the strong front: sample mean and unbiased sample variance")
        table.add("front-mean", k, n, f.mean, f.se_mean, f.reps, seed)
        table.add("front-var", k, n, f.variance, f.se_variance, f.reps, seed)
    else:
        g = gamma_monte_carlo(d, reps, seed, workers=workers)
        table.comment("mean of -log S(X_j)")
        table.add("L-mean", "", "", g.value, g.std_error, reps, seed)

    return {"ok": True, "table": table, "flagged": False}
