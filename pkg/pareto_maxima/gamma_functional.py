# pareto_maxima/gamma_functional.py
"""
gamma = -E log S(X), the constant that places the phase transition of
p_{k_n,n} at k_n / log(n) = 1/gamma.

Three independent routes: closed form, quadrature of P(X > S^-1(u)) / u over
(0,1), and the sample mean of -log S(X_j) (the L_k statistic).
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy import integrate

from . import config
from .distributions import (
    Bernoulli,
    DistributionSpec,
    FiniteDiscrete,
    atoms_of,
    sample_array,
)
from .errors import ConvergenceError, DomainError
from .logutil import log

METHODS = ("closed_form", "quadrature", "monte_carlo")
_GAMMA_UPPER_SLACK = 1e-12


@dataclass(frozen=True)
class GammaEstimate:
    value: float
    method: str
    std_error: Optional[float] = None

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise DomainError(f"unknown gamma method {self.method!r}")
        # a sample mean may land above 1 for continuous laws
        upper = math.inf if self.method == "monte_carlo" else 1.0 + _GAMMA_UPPER_SLACK
        if not (0.0 < self.value <= upper):
            raise DomainError(f"gamma must lie in (0,1], got {self.value!r}")
        if (self.std_error is not None) != (self.method == "monte_carlo"):
            raise DomainError("std_error is present iff method is monte_carlo")
        if self.std_error is not None and not (self.std_error >= 0.0):
            raise DomainError("std_error must be nonnegative")

    @property
    def inverse(self) -> float:
        return 1.0 / self.value


def gamma_closed_form(d: DistributionSpec) -> GammaEstimate:
    if d.is_continuous:
        return GammaEstimate(1.0, "closed_form")
    if isinstance(d, Bernoulli):
        return GammaEstimate(-d.p * math.log(d.p), "closed_form")
    atoms = atoms_of(d)
    tail = atoms.tail
    # S(values[j]) = tail[j] >= probs[j] > 0
    value = math.fsum(p * -math.log(tail[j]) for j, p in enumerate(atoms.probs))
    return GammaEstimate(value, "closed_form")


def _piecewise_integral(atoms: FiniteDiscrete) -> float:
    # P(X > S^-1(u)) = tail[j] on [tail[j], tail[j-1]); integrate tail[j]/u
    tail = atoms.tail
    pieces = []
    for j in range(1, len(tail) - 1):
        pieces.append(tail[j] * (math.log(tail[j - 1]) - math.log(tail[j])))
    return math.fsum(pieces)


def gamma_quadrature(d: DistributionSpec, tol: float = 1e-8) -> GammaEstimate:
    """
    Integrate P(X > S^-1(u)) / u over u in (0,1) (t = -log u substituted).

    Discrete laws are integrated exactly piece by piece; continuous laws go
    through scipy's adaptive quadrature and must reach `tol`.
    """
    if not (tol > 0.0):
        raise DomainError(f"tol must be > 0, got {tol!r}")

    if not d.is_continuous:
        return GammaEstimate(_piecewise_integral(atoms_of(d)), "quadrature")

    def integrand(u: float) -> float:
        return float(d.survival_gt(d.survival_pseudo_inverse(u))) / u

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, abserr = integrate.quad(integrand, 0.0, 1.0, epsabs=tol, epsrel=0.0, limit=config.QUAD_LIMIT)
        except integrate.IntegrationWarning as e:
            raise ConvergenceError(f"quadrature did not reach tol={tol}: {e}") from e

    if abserr > tol or not (0.0 < value <= 1.0 + max(tol, _GAMMA_UPPER_SLACK)):
        raise ConvergenceError(
            f"quadrature error estimate {abserr:.3g} exceeds tol={tol}", best_estimate=value
        )
    return GammaEstimate(min(value, 1.0), "quadrature")


def _moments(x: np.ndarray) -> Tuple[int, float, float]:
    n = int(x.size)
    mean = float(np.mean(x))
    m2 = float(np.sum((x - mean) ** 2))
    return n, mean, m2


def _pool(parts: List[Tuple[int, float, float]]) -> Tuple[int, float, float]:
    # pairwise merge of (count, mean, M2); chunk order fixed
    n, mean, m2 = parts[0]
    for nb, mb, m2b in parts[1:]:
        tot = n + nb
        delta = mb - mean
        mean = mean + delta * nb / tot
        m2 = m2 + m2b + delta * delta * n * nb / tot
        n = tot
    return n, mean, m2


def _neg_log_survival_chunk(d: DistributionSpec, seed: int, index: int, size: int) -> Tuple[int, float, float]:
    rng = np.random.default_rng([seed, index])
    x = sample_array(d, rng, size)
    vals = -np.log(np.asarray(d.survival_geq(x), dtype=np.float64))
    return _moments(vals)


def gamma_monte_carlo(
    d: DistributionSpec,
    reps: int,
    seed: int,
    *,
    workers: int = 1,
) -> GammaEstimate:
    """
    Mean of -log S(X_j) over `reps` iid draws, with its plain standard error.

    Draws are split into fixed-size chunks seeded by (seed, chunk index), so
    the answer does not depend on `workers`.
    """
    reps = int(reps)
    if reps < 2:
        raise DomainError(f"reps must be >= 2, got {reps}")
    chunk = max(1, config.MC_CHUNK_ELEMENTS)
    sizes = [min(chunk, reps - start) for start in range(0, reps, chunk)]

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda a: _neg_log_survival_chunk(d, seed, a[0], a[1]), enumerate(sizes)))
    else:
        parts = [_neg_log_survival_chunk(d, seed, i, s) for i, s in enumerate(sizes)]

    n, mean, m2 = _pool(parts)
    sd = math.sqrt(m2 / (n - 1))
    se = sd / math.sqrt(n)
    log("gamma", f"mc law={d.label} reps={n} mean={mean:.6g} se={se:.3g}")
    return GammaEstimate(mean, "monte_carlo", se)


def gamma(d: DistributionSpec, method: str = "closed_form", **kwargs) -> GammaEstimate:
    if method == "closed_form":
        return gamma_closed_form(d)
    if method == "quadrature":
        return gamma_quadrature(d, kwargs.get("tol", 1e-8))
    if method == "monte_carlo":
        return gamma_monte_carlo(d, kwargs.get("reps", 100_000), kwargs.get("seed", config.default_seed()), workers=kwargs.get("workers", 1))
    raise DomainError(f"unknown gamma method {method!r}; expected one of {METHODS}")


def gamma_bernoulli_argmax() -> Tuple[float, float]:
    """(argmax, max) of p -> -p log p on (0,1): both equal e^-1."""
    e_inv = math.exp(-1.0)
    return e_inv, e_inv


__all__ = [
    "GammaEstimate",
    "gamma_closed_form",
    "gamma_quadrature",
    "gamma_monte_carlo",
    "gamma",
    "gamma_bernoulli_argmax",
]
