# pareto_maxima/exact_bernoulli.py
"""
Exact strong / weak maximum probabilities, pair probability and front-size
variance for Bernoulli(p) coordinates.

Everything except the variance stays in log-space and uses n only through
(n-1)*log1p(.) or (n-2)*log1p(.), so n may be given as log10(n) up to ~1e300.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from . import config
from .distributions import DistributionSpec, atoms_of
from .errors import DomainError, ResourceLimitError
from .logspace import LOG_ZERO, NEG_INF, HugeN, LogProb, count_log1m, log1m_exp, log_sum_exp
from .logutil import log
from .montecarlo import batch_front_masks
from .numerics import lost_digits

KINDS = ("strong", "weak", "strong_asym", "pair", "variance_raw")

FLAG_CANCELLATION = "cancellation"

# above this log-probability the complement (not-a-maximum) is summed instead
_COMPLEMENT_SWITCH = -math.log(2.0)
_NEGATIVE_VARIANCE_TOL = -1e-9

NLike = Union[int, HugeN]


@dataclass(frozen=True)
class BernoulliProbResult:
    k: int
    n: HugeN
    p: float
    kind: str
    log_p: Optional[LogProb] = None
    value: Optional[float] = None
    flag: str = ""

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DomainError(f"unknown kind {self.kind!r}")
        if self.kind == "variance_raw":
            if self.log_p is not None or self.value is None or self.value < 0.0:
                raise DomainError("variance_raw carries a nonnegative value, not a LogProb")
        elif self.log_p is None or self.value is not None:
            raise DomainError(f"{self.kind} carries a LogProb")

    @property
    def prob(self) -> float:
        if self.log_p is None:
            raise DomainError("variance_raw is not a probability")
        return self.log_p.prob()

    @property
    def reported(self) -> float:
        """log_p for probability kinds, the raw variance otherwise."""
        if self.log_p is not None:
            return self.log_p.log_value
        return float(self.value)


def _check(k: int, n: NLike, p: float) -> Tuple[int, HugeN, float]:
    k = int(k)
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError(f"p must lie strictly inside (0,1), got {p!r}")
    return k, HugeN.of(n), p


def _log_binom(k: int, i: int) -> float:
    return math.log(math.comb(k, i))


def _combine(weights: List[float], log_x: List[float], log_count: float) -> float:
    """
    log sum_i w_i (1 - x_i)^count from log w_i and log x_i.

    The direct sum is used unless it exceeds 1/2; then 1 - sum_i w_i (1 - (1 - x_i)^count)
    is formed from positive terms, which keeps full accuracy near 1.
    """
    powers = [count_log1m(log_count, lx) for lx in log_x]
    direct = log_sum_exp(w + pw for w, pw in zip(weights, powers))
    if direct <= _COMPLEMENT_SWITCH:
        return direct
    miss = log_sum_exp(w + log1m_exp(pw) for w, pw in zip(weights, powers))
    return log1m_exp(miss)


def _binomial_weights(k: int, p: float) -> List[float]:
    lp, lq = math.log(p), math.log1p(-p)
    return [_log_binom(k, i) + i * lp + (k - i) * lq for i in range(k + 1)]


def p_bernoulli(k: int, n: NLike, p: float) -> BernoulliProbResult:
    """sum_i C(k,i) p^i (1-p)^(k-i) (1 - p^i)^(n-1)."""
    k, hn, p = _check(k, n, p)
    lp = math.log(p)
    log_x = [i * lp for i in range(k + 1)]
    value = _combine(_binomial_weights(k, p), log_x, hn.ln_minus(1))
    return BernoulliProbResult(k, hn, p, "strong", LogProb(value))


def q_bernoulli(k: int, n: NLike, p: float) -> BernoulliProbResult:
    """sum_i C(k,i) p^i (1-p)^(k-i) (1 - p^i (1 - (1-p)^(k-i)))^(n-1)."""
    k, hn, p = _check(k, n, p)
    lp, lq = math.log(p), math.log1p(-p)
    log_x = [i * lp + log1m_exp((k - i) * lq) for i in range(k + 1)]
    value = _combine(_binomial_weights(k, p), log_x, hn.ln_minus(1))
    return BernoulliProbResult(k, hn, p, "weak", LogProb(value))


def p_bernoulli_fixed_k_asymptotic(k: int, n: NLike, p: float) -> BernoulliProbResult:
    """Last term only: p^k (1 - p^k)^(n-1)."""
    k, hn, p = _check(k, n, p)
    lpk = k * math.log(p)
    value = lpk + count_log1m(hn.ln_minus(1), lpk)
    return BernoulliProbResult(k, hn, p, "strong_asym", LogProb(value))


def pair_prob(k: int, n: NLike, p: float) -> BernoulliProbResult:
    """
    P(vectors 1 and 2 are both strong maxima).

    Sums over the quartet counts (a, b, c, d) of coordinates equal to
    (0,0), (1,0), (0,1), (1,1) with b, c >= 1:
      multinomial(k; a,b,c,d) (1-p)^(2a) (p(1-p))^(b+c) p^(2d)
        * [1 - p^d (p^b + p^c - p^(b+c))]^(n-2)
    """
    k, hn, p = _check(k, n, p)
    if k < 2 or (hn.is_exact and hn.as_int() < 2):
        return BernoulliProbResult(k, hn, p, "pair", LOG_ZERO)
    if k > config.PAIR_WARN_K:
        log("bernoulli", f"pair_prob k={k}: O(k^3) = ~{k**3 // 6} compositions, this may be slow")

    lp, lq = math.log(p), math.log1p(-p)
    log_count = hn.ln_minus(2)
    lgk = math.lgamma(k + 1)
    # log1p(-p^j) for j = 0..k
    l1m = [NEG_INF] + [math.log1p(-math.exp(j * lp)) for j in range(1, k + 1)]

    terms: List[float] = []
    for b in range(1, k):
        for c in range(1, k - b + 1):
            # p^b + p^c - p^(b+c) = 1 - (1-p^b)(1-p^c)
            log_hit = log1m_exp(l1m[b] + l1m[c])
            rest = k - b - c
            for d in range(rest + 1):
                a = rest - d
                log_w = (
                    lgk
                    - math.lgamma(a + 1)
                    - math.lgamma(b + 1)
                    - math.lgamma(c + 1)
                    - math.lgamma(d + 1)
                    + 2 * a * lq
                    + (b + c) * (lp + lq)
                    + 2 * d * lp
                )
                terms.append(log_w + count_log1m(log_count, d * lp + log_hit))
    return BernoulliProbResult(k, hn, p, "pair", LogProb(log_sum_exp(terms)))


def variance_front_size(k: int, n: int, p: float) -> BernoulliProbResult:
    """Var|MAX| = n P (1 - P) + n (n-1) (Q - P^2), P = p_bernoulli, Q = pair_prob."""
    k, hn, p = _check(k, n, p)
    if not hn.is_exact:
        raise DomainError("variance_front_size needs an exact integer n")
    m = hn.as_int()
    if m > config.VARIANCE_MAX_N:
        raise ResourceLimitError(f"variance_front_size limited to n <= {config.VARIANCE_MAX_N}, got {m}")
    if m == 1:
        return BernoulliProbResult(k, hn, p, "variance_raw", value=0.0)

    P = p_bernoulli(k, m, p).prob
    Q = pair_prob(k, m, p).prob
    pairs = float(m) * float(m - 1)
    terms = [m * P, -m * P * P, pairs * Q, -pairs * P * P]
    value = math.fsum(terms)

    flag = ""
    lost = lost_digits(terms, value)
    if lost > config.CANCELLATION_DIGITS or value < _NEGATIVE_VARIANCE_TOL:
        flag = FLAG_CANCELLATION
        log("bernoulli", f"variance k={k} n={m} p={p:g}: ~{lost:.1f} digits lost, value={value!r}")
    return BernoulliProbResult(k, hn, p, "variance_raw", value=max(0.0, value), flag=flag)


def expected_front_size_bernoulli(k: int, n: int, p: float) -> float:
    """E|MAX| = n * p_bernoulli(k, n, p)."""
    k, hn, p = _check(k, n, p)
    return math.exp(hn.ln + p_bernoulli(k, hn, p).log_p.log_value)


# ---------------- enumeration oracle ----------------

@dataclass(frozen=True)
class BruteForceResult:
    p_strong: float
    q_weak: float
    mean_front: float
    var_front: float
    front_pmf: Tuple[float, ...]
    pair_strong: float = 0.0


def brute_force_discrete(k: int, n: int, d: DistributionSpec) -> BruteForceResult:
    """Enumerate all m^(k n) configurations of a finite-support law."""
    k, n = int(k), int(n)
    if k < 1 or n < 1:
        raise DomainError(f"k and n must be >= 1, got k={k} n={n}")
    atoms = atoms_of(d)
    values = np.asarray(atoms.values, dtype=np.float64)
    probs = np.asarray(atoms.probs, dtype=np.float64)
    m = len(values)
    cells = k * n
    total = m**cells
    if total > config.BRUTE_FORCE_CAP:
        raise ResourceLimitError(f"|support|^(k n) = {total} configurations exceeds cap {config.BRUTE_FORCE_CAP}")

    batch = max(1, config.MC_CHUNK_ELEMENTS // max(1, n * n * k))
    p_strong: List[float] = []
    pair: List[float] = []
    q_weak: List[float] = []
    pmf = np.zeros(n + 1, dtype=np.float64)
    for start in range(0, total, batch):
        idx = np.arange(start, min(total, start + batch), dtype=np.int64)
        digits = np.empty((idx.size, cells), dtype=np.int64)
        rem = idx.copy()
        for pos in range(cells):
            digits[:, pos] = rem % m
            rem //= m
        w = probs[digits].prod(axis=1)
        strong, weak = batch_front_masks(values[digits].reshape(idx.size, n, k))
        p_strong.append(float(np.dot(w, strong[:, 0])))
        q_weak.append(float(np.dot(w, weak[:, 0])))
        if n >= 2:
            pair.append(float(np.dot(w, strong[:, 0] & strong[:, 1])))
        pmf += np.bincount(strong.sum(axis=1), weights=w, minlength=n + 1)

    sizes = np.arange(n + 1, dtype=np.float64)
    mean = math.fsum(sizes * pmf)
    var = math.fsum(pmf * (sizes - mean) ** 2)
    return BruteForceResult(
        p_strong=math.fsum(p_strong),
        q_weak=math.fsum(q_weak),
        mean_front=mean,
        var_front=var,
        front_pmf=tuple(float(v) for v in pmf),
        pair_strong=math.fsum(pair),
    )


__all__ = [
    "BernoulliProbResult",
    "BruteForceResult",
    "p_bernoulli",
    "q_bernoulli",
    "p_bernoulli_fixed_k_asymptotic",
    "pair_prob",
    "variance_front_size",
    "expected_front_size_bernoulli",
    "brute_force_discrete",
]
