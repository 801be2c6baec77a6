# pareto_maxima/exact_continuous.py
"""
p_{k,n} for continuous coordinates (the same for every continuous F).

Exact routes: level-by-level recurrence, alternating binomial sum (float with
a cancellation estimate, or exact rationals), and direct enumeration of
weakly increasing tuples. Approximations: the fixed-k asymptotic and the
three-regime first-order approximation (saddle / gaussian / upper).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Tuple, Union

import numpy as np
from scipy.special import gammaln, log_ndtr

from . import config
from .errors import DomainError, ResourceLimitError
from .logspace import HugeN, LogProb
from .logutil import log
from .numerics import CompensatedSum

METHODS = (
    "recurrence",
    "alternating_float",
    "alternating_rational",
    "nested_oracle",
    "fixed_k_asymptotic",
    "hwang",
)
EXACT_METHODS = ("recurrence", "alternating_rational", "nested_oracle")
REGIMES = ("saddle", "gaussian", "upper")

# |d| cutoff between the three regimes, d = (k - log n) / sqrt(log n)
HWANG_CUTOFF = 2.0

FLAG_UNRELIABLE = "unreliable"
FLAG_CLAMPED = "clamped"

NLike = Union[int, HugeN]


@dataclass(frozen=True)
class ContinuousProbResult:
    k: int
    n: HugeN
    method: str
    log_p: Optional[LogProb]
    regime: Optional[str] = None
    flag: str = ""
    cancellation_ulps: Optional[float] = None
    exact: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}")
        if (self.regime is not None) != (self.method == "hwang"):
            raise DomainError("regime is set iff method is hwang")
        if self.regime is not None and self.regime not in REGIMES:
            raise DomainError(f"unknown regime {self.regime!r}")

    @property
    def prob(self) -> float:
        if self.log_p is None:
            return math.nan
        return self.log_p.prob()


def _check_k(k: int) -> int:
    k = int(k)
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    return k


def _check_n(n: int) -> int:
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return n


# ---------------- recurrence ----------------

def _recurrence_levels(k_max: int, n: int) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield (level, row) with row[u-1] = p(level, u); row is reused in place."""
    u = np.arange(1, n + 1, dtype=np.float64)
    row = 1.0 / u
    yield 1, row
    for level in range(2, k_max + 1):
        np.cumsum(row, out=row)
        row /= u
        yield level, row


def _check_recurrence_n(n: int) -> None:
    if n > config.RECURRENCE_N_CAP:
        raise ResourceLimitError(f"recurrence row of length n={n} exceeds cap {config.RECURRENCE_N_CAP}")


def p_recurrence(k: int, n: int) -> ContinuousProbResult:
    """p(k,n) = (1/n) sum_{u<=n} p(k-1,u), p(1,n) = 1/n; O(k n) time, O(n) memory."""
    k, n = _check_k(k), _check_n(n)
    _check_recurrence_n(n)
    if k == 1:
        return ContinuousProbResult(k, HugeN.of(n), "recurrence", LogProb(-math.log(n)))
    value = 1.0
    for level, row in _recurrence_levels(k, n):
        if level == k:
            value = float(row[n - 1])
    return ContinuousProbResult(k, HugeN.of(n), "recurrence", LogProb.from_prob(value))


def recurrence_values(queries: Iterable[Tuple[int, int]]) -> Dict[Tuple[int, int], LogProb]:
    """
    Evaluate many (k, n) pairs with one level-by-level pass over the longest row.
    """
    wanted: Dict[int, set] = {}
    for k, n in queries:
        k, n = _check_k(k), _check_n(n)
        wanted.setdefault(k, set()).add(n)
    if not wanted:
        return {}
    k_max = max(wanted)
    n_max = max(max(ns) for ns in wanted.values())
    _check_recurrence_n(n_max)
    log("exact", f"recurrence pass k_max={k_max} n_max={n_max} queries={sum(len(v) for v in wanted.values())}")

    out: Dict[Tuple[int, int], LogProb] = {}
    for level, row in _recurrence_levels(k_max, n_max):
        for n in wanted.get(level, ()):
            if level == 1:
                out[(1, n)] = LogProb(-math.log(n))
            else:
                out[(level, n)] = LogProb.from_prob(float(row[n - 1]))
    return out


def expected_front_size(k: int, n: int) -> float:
    """Mean number of maxima, n * p(k,n)."""
    return n * p_recurrence(k, n).prob


# ---------------- alternating sum ----------------

def _alternating_float(k: int, n: int) -> ContinuousProbResult:
    acc = CompensatedSum()
    lg = math.lgamma(n)
    for u in range(1, n + 1):
        if n <= config.ALT_EXACT_N_CAP:
            try:
                mag = math.comb(n - 1, u - 1) / (u**k)
            except OverflowError:
                mag = math.inf
        else:
            log_mag = lg - math.lgamma(u) - math.lgamma(n - u + 1) - k * math.log(u)
            mag = math.exp(log_mag) if log_mag < 709.0 else math.inf
        acc.add(mag if u % 2 == 1 else -mag)

    total = acc.total
    ulps = acc.cancellation_ulps
    flag = ""
    log_p: Optional[LogProb] = None
    if math.isfinite(total) and 0.0 < total <= 1.0 + 1e-12:
        log_p = LogProb.from_prob(min(total, 1.0))
    if log_p is None or ulps > config.ALT_UNRELIABLE_ULPS:
        flag = FLAG_UNRELIABLE
        log("exact", f"alternating sum k={k} n={n} unreliable: cancellation ~{ulps:.3g} ulps, sum={total!r}")
    return ContinuousProbResult(
        k, HugeN.of(n), "alternating_float", log_p, flag=flag, cancellation_ulps=ulps
    )


def _alternating_rational(k: int, n: int) -> ContinuousProbResult:
    if n > config.ALT_EXACT_N_CAP:
        raise ResourceLimitError(f"exact rational alternating sum limited to n <= {config.ALT_EXACT_N_CAP}, got {n}")
    total = Fraction(0)
    for u in range(1, n + 1):
        term = Fraction(math.comb(n - 1, u - 1), u**k)
        total += term if u % 2 == 1 else -term
    return ContinuousProbResult(
        k, HugeN.of(n), "alternating_rational", LogProb.from_fraction(total), exact=total
    )


def p_alternating(k: int, n: int, mode: str = "float_compensated") -> ContinuousProbResult:
    """p(k,n) = sum_u C(n-1,u-1) (-1)^(u-1) / u^k."""
    k, n = _check_k(k), _check_n(n)
    if mode == "float_compensated":
        return _alternating_float(k, n)
    if mode == "exact_rational":
        return _alternating_rational(k, n)
    raise DomainError(f"unknown alternating mode {mode!r}; expected float_compensated or exact_rational")


# ---------------- enumeration oracle ----------------

def p_nested_oracle(k: int, n: int) -> ContinuousProbResult:
    """(1/n) sum over 1 <= u_1 <= ... <= u_{k-1} <= n of 1/(u_1 ... u_{k-1})."""
    k, n = _check_k(k), _check_n(n)
    size = math.comb(n + k - 2, k - 1)
    if size > config.ORACLE_TUPLE_CAP:
        raise ResourceLimitError(f"|U_(k,n)| = {size} tuples exceeds oracle cap {config.ORACLE_TUPLE_CAP}")
    s = math.fsum(1.0 / math.prod(t) for t in itertools.combinations_with_replacement(range(1, n + 1), k - 1))
    return ContinuousProbResult(k, HugeN.of(n), "nested_oracle", LogProb.from_prob(min(1.0, s / n)))


# ---------------- approximations ----------------

def _ln_n(n: NLike, minimum: int) -> Tuple[HugeN, float]:
    hn = HugeN.of(n)
    L = hn.ln
    if L < math.log(minimum) - 1e-12:
        raise DomainError(f"n must be >= {minimum}, got {hn}")
    return hn, L


def _log_fixed_k(k: int, L: float) -> float:
    return (k - 1) * math.log(L) - L - float(gammaln(k))


def p_fixed_k_asymptotic(k: int, n: NLike) -> ContinuousProbResult:
    """log^(k-1)(n) / (n (k-1)!), in log-space."""
    k = _check_k(k)
    hn, L = _ln_n(n, 2)
    return ContinuousProbResult(k, hn, "fixed_k_asymptotic", LogProb(_log_fixed_k(k, L)))


def hwang_regime(k: int, L: float) -> Tuple[str, float]:
    d = (k - L) / math.sqrt(L)
    if d <= -HWANG_CUTOFF:
        return "saddle", d
    if d < HWANG_CUTOFF:
        return "gaussian", d
    return "upper", d


def p_hwang(k: int, n: NLike) -> ContinuousProbResult:
    """
    First-order approximation uniform in k:
      saddle   (d <= -2): log^(k-1)n / (n (k-1)!) * Gamma(1 - k/log n)
      gaussian (|d| < 2): Phi(d)
      upper    (d >= 2):  1
    """
    k = _check_k(k)
    hn, L = _ln_n(n, 3)
    regime, d = hwang_regime(k, L)
    flag = ""
    if regime == "saddle":
        value = _log_fixed_k(k, L) + float(gammaln(1.0 - k / L))
    elif regime == "gaussian":
        value = float(log_ndtr(d))
    else:
        value = 0.0
    if value > 0.0:
        value, flag = 0.0, FLAG_CLAMPED
    return ContinuousProbResult(k, hn, "hwang", LogProb(value), regime=regime, flag=flag)


__all__ = [
    "ContinuousProbResult",
    "p_recurrence",
    "recurrence_values",
    "expected_front_size",
    "p_alternating",
    "p_nested_oracle",
    "p_fixed_k_asymptotic",
    "p_hwang",
    "hwang_regime",
]
