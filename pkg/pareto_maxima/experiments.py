# pareto_maxima/experiments.py
"""
Sweeps over (c, n) with k = k_rule(c, n), and the three figure panels.

Every run returns a CsvTable whose comment block records the full config,
seed and k-rule; rows come out in config order whatever the worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import exact_bernoulli as eb
from . import exact_continuous as ec
from .csvio import CsvTable
from .distributions import Bernoulli, DistributionSpec
from .errors import ConfigError, DomainError, ResourceLimitError
from .gamma_functional import gamma_closed_form
from .logspace import HugeN, LogProb
from .logutil import log

K_RULES = ("ceil_c_logn", "floor_c_logn", "c_over_gamma")

CONTINUOUS_METHODS = ("rec", "alt", "alt-exact", "oracle", "asym", "hwang")
BERNOULLI_METHODS = ("bern-strong", "bern-weak", "bern-asym")

SWEEP_COLUMNS = ("c", "k", "log10_n", "method", "log_p", "flag")
FLAG_SKIPPED = "skipped"

FIGURE_PANELS = ("a", "b", "c")
PANEL_A_K = (1, 2, 3, 4, 5)
PANEL_B_C = (0.6, 0.8, 1.0, 1.2, 1.4)
PANEL_C_C = (0.5, 1.0, 1.5)
PANEL_C_LOG10_N = tuple(range(10, 131, 10))


def log_grid(max_exp: int, per_decade: int) -> List[int]:
    """Distinct integers round(10^(j/per_decade)) for j = 0..max_exp*per_decade."""
    raw = np.round(np.logspace(0.0, float(max_exp), max_exp * per_decade + 1))
    return sorted({int(v) for v in raw})


def k_for(rule: str, c: float, n: HugeN, gamma_value: Optional[float] = None) -> int:
    L = n.ln
    if rule == "ceil_c_logn":
        k = math.ceil(c * L)
    elif rule == "floor_c_logn":
        k = math.floor(c * L)
    elif rule == "c_over_gamma":
        if gamma_value is None:
            raise ConfigError("c_over_gamma needs gamma")
        k = math.ceil(c * L / gamma_value)
    else:
        raise ConfigError(f"unknown k_rule {rule!r}; expected one of {K_RULES}")
    return max(1, int(k))


@dataclass
class SweepConfig:
    dist: DistributionSpec
    c_values: List[float]
    n_grid: List[HugeN]
    k_rule: str = "ceil_c_logn"
    methods: List[str] = field(default_factory=lambda: ["rec"])
    seed: int = 0
    output_path: Optional[str] = None

    def __post_init__(self) -> None:
        self.c_values = [float(c) for c in self.c_values]
        self.n_grid = [HugeN.of(n) for n in self.n_grid]
        self.methods = list(self.methods)
        if not self.c_values:
            raise ConfigError("c_values must be nonempty")
        if any(not (c > 0.0) for c in self.c_values):
            raise ConfigError(f"c_values must be positive: {self.c_values}")
        if not self.n_grid:
            raise ConfigError("n_grid must be nonempty")
        if self.k_rule not in K_RULES:
            raise ConfigError(f"unknown k_rule {self.k_rule!r}; expected one of {K_RULES}")
        if not self.methods:
            raise ConfigError("methods must be nonempty")
        allowed = CONTINUOUS_METHODS if self.dist.is_continuous else BERNOULLI_METHODS
        if not self.dist.is_continuous and not isinstance(self.dist, Bernoulli):
            raise ConfigError(f"sweeps support continuous laws and Bernoulli(p), not {self.dist.label}")
        bad = [m for m in self.methods if m not in allowed]
        if bad:
            raise ConfigError(f"methods {bad} are not valid for {self.dist.label}; allowed: {list(allowed)}")

    def describe(self) -> List[str]:
        return [
            f"dist={self.dist.label}",
            f"c_values={','.join(repr(c) for c in self.c_values)}",
            f"log10_n={','.join(repr(n.log10) for n in self.n_grid)}",
            f"k_rule={self.k_rule}",
            f"methods={','.join(self.methods)}",
            f"seed={self.seed}",
        ]


def _exact_n(n: HugeN) -> int:
    if not n.is_exact:
        raise DomainError(f"method needs an exact integer n, got {n}")
    return n.as_int()


def _continuous_row(method: str, k: int, n: HugeN) -> Tuple[Optional[LogProb], str]:
    if method == "alt":
        r = ec.p_alternating(k, _exact_n(n), "float_compensated")
    elif method == "alt-exact":
        r = ec.p_alternating(k, _exact_n(n), "exact_rational")
    elif method == "oracle":
        r = ec.p_nested_oracle(k, _exact_n(n))
    elif method == "asym":
        r = ec.p_fixed_k_asymptotic(k, n)
    elif method == "hwang":
        r = ec.p_hwang(k, n)
        return r.log_p, r.regime if not r.flag else f"{r.regime};{r.flag}"
    else:
        r = ec.p_recurrence(k, _exact_n(n))
    return r.log_p, r.flag


def _bernoulli_row(method: str, k: int, n: HugeN, p: float) -> Tuple[Optional[LogProb], str]:
    if method == "bern-weak":
        r = eb.q_bernoulli(k, n, p)
    elif method == "bern-asym":
        r = eb.p_bernoulli_fixed_k_asymptotic(k, n, p)
    else:
        r = eb.p_bernoulli(k, n, p)
    return r.log_p, r.flag


def _ordered(fn: Callable[[Tuple], Tuple], items: Sequence[Tuple], workers: int) -> List[Tuple]:
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    return [fn(it) for it in items]


def run_sweep(cfg: SweepConfig, *, workers: int = 1) -> CsvTable:
    """One row per (c, n, method): c,k,log10_n,method,log_p,flag."""
    gamma_value = gamma_closed_form(cfg.dist).value if cfg.k_rule == "c_over_gamma" else None
    plan = [
        (c, n, k_for(cfg.k_rule, c, n, gamma_value), m)
        for c in cfg.c_values
        for n in cfg.n_grid
        for m in cfg.methods
    ]
    log("sweep", f"{len(plan)} rows dist={cfg.dist.label} k_rule={cfg.k_rule} workers={workers}")

    # all recurrence rows share one level-by-level pass
    rec_values: Dict[Tuple[int, int], LogProb] = {}
    rec_queries = [(k, n.as_int()) for _, n, k, m in plan if m == "rec" and n.is_exact]
    if rec_queries:
        try:
            rec_values = ec.recurrence_values(rec_queries)
        except ResourceLimitError as e:
            log("sweep", f"batched recurrence unavailable: {e}")

    p = cfg.dist.p if isinstance(cfg.dist, Bernoulli) else None

    def one(item: Tuple) -> Tuple:
        c, n, k, m = item
        try:
            if m == "rec" and n.is_exact and (k, n.as_int()) in rec_values:
                lp, flag = rec_values[(k, n.as_int())], ""
            elif p is not None:
                lp, flag = _bernoulli_row(m, k, n, p)
            else:
                lp, flag = _continuous_row(m, k, n)
        except (DomainError, ResourceLimitError) as e:
            log("sweep", f"row c={c} n={n} k={k} method={m} skipped: {e}")
            lp, flag = None, FLAG_SKIPPED
        value = lp.log_value if lp is not None else math.nan
        return (c, k, n.log10, m, value, flag)

    table = CsvTable(SWEEP_COLUMNS)
    for line in cfg.describe():
        table.comment(line)
    if gamma_value is not None:
        table.comment(f"gamma={gamma_value!r} k=ceil(c*log(n)/gamma)")
    table.extend(_ordered(one, plan, workers))
    if cfg.output_path:
        table.write(cfg.output_path)
    return table


# ---------------- figure panels ----------------

def _panel_a() -> CsvTable:
    grid = log_grid(5, 4)
    table = CsvTable(("k", "n", "p_cont", "q_bern_0.5", "p_bern_0.5", "p_cont_asym"))
    table.comment("panel=a continuous p = q for every continuous law, Bernoulli(0.5) strong and weak")
    table.comment(f"k={','.join(str(k) for k in PANEL_A_K)} n=round(10^(j/4)) up to 1e5")
    rec = ec.recurrence_values([(k, n) for k in PANEL_A_K for n in grid])
    for k in PANEL_A_K:
        for n in grid:
            asym = ec.p_fixed_k_asymptotic(k, n).prob if n >= 2 else math.nan
            table.add(
                k,
                n,
                rec[(k, n)].prob(),
                eb.q_bernoulli(k, n, 0.5).prob,
                eb.p_bernoulli(k, n, 0.5).prob,
                asym,
            )
    return table


def _panel_b() -> CsvTable:
    grid = log_grid(7, 8)
    table = CsvTable(("c", "n", "k", "log_p"))
    table.comment("panel=b continuous p_(k,n) by recurrence")
    table.comment(f"k_rule=floor_c_logn (k = max(1, floor(c*log(n)))) c={','.join(repr(c) for c in PANEL_B_C)}")
    plan = [(c, n, k_for("floor_c_logn", c, HugeN.of(n))) for c in PANEL_B_C for n in grid]
    rec = ec.recurrence_values([(k, n) for _, n, k in plan])
    for c, n, k in plan:
        table.add(c, n, k, rec[(k, n)].log_value)
    return table


def _panel_c() -> CsvTable:
    d = Bernoulli(0.5)
    g = gamma_closed_form(d).value
    table = CsvTable(("c", "log10_n", "k", "log_p_strong", "log_q_weak"))
    table.comment("panel=c Bernoulli(0.5) strong and weak maxima, log-space formulas")
    table.comment(f"k_rule=c_over_gamma (k = ceil(c*log(n)/gamma)) gamma={g!r}")
    table.comment("transition at c = 1: p -> 1 above, p -> 0 below")
    for c in PANEL_C_C:
        for l10 in PANEL_C_LOG10_N:
            n = HugeN.from_log10(l10)
            k = k_for("c_over_gamma", c, n, g)
            table.add(
                c,
                float(l10),
                k,
                eb.p_bernoulli(k, n, 0.5).log_p.log_value,
                eb.q_bernoulli(k, n, 0.5).log_p.log_value,
            )
    return table


_PANELS: Dict[str, Callable[[], CsvTable]] = {"a": _panel_a, "b": _panel_b, "c": _panel_c}


def run_figure(panel: str, seed: int, output_path: Optional[str] = None) -> CsvTable:
    """Data for one figure panel; exact methods only, the seed is recorded for provenance."""
    panel = str(panel).lower()
    if panel not in _PANELS:
        raise ConfigError(f"unknown panel {panel!r}; expected one of {FIGURE_PANELS}")
    log("figure", f"panel {panel}")
    table = _PANELS[panel]()
    table.comment(f"seed={seed}")
    if output_path:
        table.write(output_path)
    return table


__all__ = [
    "SweepConfig",
    "K_RULES",
    "CONTINUOUS_METHODS",
    "BERNOULLI_METHODS",
    "k_for",
    "log_grid",
    "run_sweep",
    "run_figure",
]
