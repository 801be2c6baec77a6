# pareto_maxima/logspace.py
"""
Log-space probability plumbing.

LogProb stores a probability as its natural log (-inf is an exact zero).
HugeN is a sample size that may be too large for an integer grid; it is
either an exact int (<= 2**53) or a real log10(n).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError

NEG_INF = float("-inf")
LN10 = math.log(10.0)
EXACT_N_MAX = 2**53
MAX_LOG10_N = 307.0

# log(1 - x) ~ -x - x^2/2 below this x
SERIES_CUTOFF = 1e-17
_LOG_SERIES_CUTOFF = math.log(SERIES_CUTOFF)
_ROUNDOFF = 1e-12
_EXP_MAX = 709.78


def safe_exp(a: float) -> float:
    if a > _EXP_MAX:
        return math.inf
    return math.exp(a)


def log1m_exp(a: float) -> float:
    """log(1 - e^a) for a <= 0."""
    if a > 0.0:
        if a <= _ROUNDOFF:
            return NEG_INF
        raise DomainError(f"log1m_exp needs a <= 0, got {a!r}")
    if a == 0.0:
        return NEG_INF
    if a > -math.log(2.0):
        return math.log(-math.expm1(a))
    return math.log1p(-math.exp(a))


def count_log1m(log_count: float, log_x: float) -> float:
    """
    count * log1p(-x), given log(count) and log(x), x in [0, 1].

    Kept in log-space so counts near 10**300 neither overflow nor lose the
    tiny x that underflows in x itself.
    """
    if log_count == NEG_INF or log_x == NEG_INF:
        return 0.0
    if log_x >= 0.0:
        return NEG_INF
    if log_x < _LOG_SERIES_CUTOFF:
        x = math.exp(log_x)
        return -safe_exp(log_count + log_x + math.log1p(0.5 * x))
    return -safe_exp(log_count + math.log(-math.log1p(-math.exp(log_x))))


def log_sum_exp(terms: Iterable[float]) -> float:
    """Max-shifted sum of positive terms given by their logs, ascending order."""
    arr = np.asarray([t for t in terms if t != NEG_INF], dtype=np.float64)
    if arr.size == 0:
        return NEG_INF
    arr.sort()
    return float(logsumexp(arr))


@dataclass(frozen=True, order=True)
class LogProb:
    log_value: float

    def __post_init__(self) -> None:
        v = float(self.log_value)
        if math.isnan(v):
            raise DomainError("LogProb cannot be NaN")
        if v > 0.0:
            if v > _ROUNDOFF:
                raise DomainError(f"LogProb must be <= 0, got {v!r}")
            v = 0.0
        object.__setattr__(self, "log_value", v)

    @classmethod
    def from_prob(cls, p: float) -> "LogProb":
        p = float(p)
        if not (0.0 <= p <= 1.0 + _ROUNDOFF):
            raise DomainError(f"probability outside [0,1]: {p!r}")
        if p == 0.0:
            return cls(NEG_INF)
        return cls(min(0.0, math.log(p)))

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "LogProb":
        if fr < 0 or fr > 1:
            raise DomainError(f"probability outside [0,1]: {fr}")
        if fr == 0:
            return cls(NEG_INF)
        return cls(math.log(fr.numerator) - math.log(fr.denominator))

    @property
    def is_zero(self) -> bool:
        return self.log_value == NEG_INF

    def prob(self) -> float:
        return math.exp(self.log_value)

    def complement(self) -> "LogProb":
        return LogProb(log1m_exp(self.log_value))

    def __mul__(self, other: "LogProb") -> "LogProb":
        return LogProb(self.log_value + other.log_value)

    def __str__(self) -> str:
        return f"E{self.log_value:.6f}"


LOG_ZERO = LogProb(NEG_INF)
LOG_ONE = LogProb(0.0)


@dataclass(frozen=True)
class HugeN:
    exact: Optional[int] = None
    log10: float = 0.0

    def __post_init__(self) -> None:
        if self.exact is not None:
            n = int(self.exact)
            if n < 1:
                raise DomainError(f"n must be >= 1, got {n}")
            if n > EXACT_N_MAX:
                raise DomainError("exact n above 2**53; use HugeN.of() or from_log10()")
            object.__setattr__(self, "exact", n)
            object.__setattr__(self, "log10", math.log10(n))
            return
        L = float(self.log10)
        if not math.isfinite(L) or L < 0.0 or L > MAX_LOG10_N:
            raise DomainError(f"log10(n) must lie in [0, {MAX_LOG10_N}], got {L!r}")
        object.__setattr__(self, "log10", L)

    @classmethod
    def of(cls, n: Union[int, "HugeN"]) -> "HugeN":
        if isinstance(n, HugeN):
            return n
        n = int(n)
        if n > EXACT_N_MAX:
            return cls(log10=math.log10(n))
        return cls(exact=n)

    @classmethod
    def from_log10(cls, log10_n: float) -> "HugeN":
        return cls(log10=float(log10_n))

    @classmethod
    def from_ln(cls, ln_n: float) -> "HugeN":
        return cls(log10=float(ln_n) / LN10)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def ln(self) -> float:
        if self.exact is not None:
            return math.log(self.exact)
        return self.log10 * LN10

    def as_int(self) -> int:
        if self.exact is None:
            raise DomainError(f"n given as log10={self.log10}; an exact integer is required here")
        return self.exact

    def ln_minus(self, m: int) -> float:
        """log(n - m); -inf when n == m."""
        if self.exact is not None:
            d = self.exact - m
            if d < 0:
                raise DomainError(f"n={self.exact} smaller than {m}")
            return NEG_INF if d == 0 else math.log(d)
        if self.log10 < 15.0:
            d = 10.0**self.log10 - m
            if d < 0:
                raise DomainError(f"n=10**{self.log10} smaller than {m}")
            return NEG_INF if d == 0 else math.log(d)
        return self.ln + math.log1p(-m * 10.0 ** (-self.log10))

    def __str__(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        return f"10^{self.log10:g}"


__all__ = [
    "NEG_INF",
    "LogProb",
    "LOG_ZERO",
    "LOG_ONE",
    "HugeN",
    "log1m_exp",
    "count_log1m",
    "log_sum_exp",
    "safe_exp",
]
