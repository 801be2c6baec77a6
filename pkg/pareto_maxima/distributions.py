# pareto_maxima/distributions.py
"""
Coordinate laws F.

Every law exposes F (cdf), S(x) = P(X >= x) (survival_geq, weak inequality),
the strict survival P(X > x), the pseudo-inverse S^-1(y) = inf{x; S(x) <= y}
and the generalized inverse F^-1(u) = inf{x; F(x) >= u}. Sampling always goes
through F^-1 so that pushing shared uniforms through different laws couples
them exactly.

Methods accept scalars or numpy arrays; module-level functions return floats
for scalar input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Tuple, Union

import numpy as np

from .errors import DomainError
from .logspace import LogProb  # noqa: F401  (re-exported)

ArrayLike = Union[float, np.ndarray]

_PROB_SUM_TOL = 1e-12


class DistributionSpec:
    """Base for the supported laws. Immutable after construction."""

    is_continuous: bool = False

    @property
    def label(self) -> str:
        raise NotImplementedError

    def cdf(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def survival_geq(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def survival_gt(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def survival_pseudo_inverse(self, y: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def quantile(self, u: ArrayLike) -> ArrayLike:
        raise NotImplementedError


def _as_open_unit(v: ArrayLike, what: str) -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64)
    if np.any(~(arr > 0.0)) or np.any(~(arr < 1.0)):
        raise DomainError(f"{what} must lie in (0,1)")
    return arr


def _out(arr: np.ndarray, like: ArrayLike) -> ArrayLike:
    if np.ndim(like) == 0:
        return float(arr)
    return arr


@dataclass(frozen=True)
class ContinuousUniform01(DistributionSpec):
    is_continuous = True

    @property
    def label(self) -> str:
        return "uniform"

    def cdf(self, x: ArrayLike) -> ArrayLike:
        arr = np.asarray(x, dtype=np.float64)
        return _out(np.clip(arr, 0.0, 1.0), x)

    def survival_geq(self, x: ArrayLike) -> ArrayLike:
        arr = np.asarray(x, dtype=np.float64)
        return _out(np.clip(1.0 - arr, 0.0, 1.0), x)

    def survival_gt(self, x: ArrayLike) -> ArrayLike:
        return self.survival_geq(x)

    def survival_pseudo_inverse(self, y: ArrayLike) -> ArrayLike:
        arr = _as_open_unit(y, "y")
        return _out(1.0 - arr, y)

    def quantile(self, u: ArrayLike) -> ArrayLike:
        arr = _as_open_unit(u, "u")
        return _out(arr.copy(), u)


@dataclass(frozen=True)
class Exponential(DistributionSpec):
    rate: float = 1.0
    is_continuous = True

    def __post_init__(self) -> None:
        r = float(self.rate)
        if not (math.isfinite(r) and r > 0.0):
            raise DomainError(f"Exponential rate must be > 0, got {self.rate!r}")
        object.__setattr__(self, "rate", r)

    @property
    def label(self) -> str:
        return f"exp:{self.rate:g}"

    def cdf(self, x: ArrayLike) -> ArrayLike:
        arr = np.asarray(x, dtype=np.float64)
        out = np.where(arr > 0.0, -np.expm1(-self.rate * np.maximum(arr, 0.0)), 0.0)
        return _out(out, x)

    def survival_geq(self, x: ArrayLike) -> ArrayLike:
        arr = np.asarray(x, dtype=np.float64)
        out = np.where(arr > 0.0, np.exp(-self.rate * np.maximum(arr, 0.0)), 1.0)
        return _out(out, x)

    def survival_gt(self, x: ArrayLike) -> ArrayLike:
        return self.survival_geq(x)

    def survival_pseudo_inverse(self, y: ArrayLike) -> ArrayLike:
        arr = _as_open_unit(y, "y")
        return _out(-np.log(arr) / self.rate, y)

    def quantile(self, u: ArrayLike) -> ArrayLike:
        arr = _as_open_unit(u, "u")
        return _out(-np.log1p(-arr) / self.rate, u)


@dataclass(frozen=True)
class FiniteDiscrete(DistributionSpec):
    """Finitely many atoms: strictly increasing values, positive probs summing to 1."""

    values: Tuple[float, ...]
    probs: Tuple[float, ...]
    _cum: np.ndarray = field(init=False, repr=False, compare=False)
    _tail: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        probs = tuple(float(p) for p in self.probs)
        if len(values) != len(probs):
            raise DomainError("values and probs must have equal length")
        # a point mass ties every vector and has gamma = 0
        if len(values) < 2:
            raise DomainError("FiniteDiscrete needs at least two atoms")
        if any(not math.isfinite(v) for v in values):
            raise DomainError("values must be finite")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise DomainError(f"values must be strictly increasing: {values}")
        if any(not (p > 0.0) for p in probs):
            raise DomainError(f"probs must be > 0: {probs}")
        if abs(math.fsum(probs) - 1.0) > _PROB_SUM_TOL:
            raise DomainError(f"probs must sum to 1 (within {_PROB_SUM_TOL}), got {math.fsum(probs)!r}")

        p = np.asarray(probs, dtype=np.float64)
        cum = np.cumsum(p)
        cum[-1] = 1.0
        # tail[j] = P(X >= values[j]); tail[m] = 0
        tail = np.zeros(len(p) + 1, dtype=np.float64)
        tail[:-1] = np.cumsum(p[::-1])[::-1]
        tail[0] = 1.0

        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "_cum", cum)
        object.__setattr__(self, "_tail", tail)

    @property
    def label(self) -> str:
        return "disc:" + ",".join(f"{v:g}:{p!r}" for v, p in zip(self.values, self.probs))

    @property
    def tail(self) -> np.ndarray:
        """tail[j] = P(X >= values[j]) for j < m, tail[m] = 0."""
        return self._tail.copy()

    def cdf(self, x: ArrayLike) -> ArrayLike:
        arr = np.asarray(x, dtype=np.float64)
        idx = np.searchsorted(np.asarray(self.values), arr, side="right")
        cum0 = np.concatenate(([0.0], self._cum))
        return _out(cum0[idx], x)

    def survival_geq(self, x: ArrayLike) -> ArrayLike:
        arr = np.asarray(x, dtype=np.float64)
        idx = np.searchsorted(np.asarray(self.values), arr, side="left")
        return _out(self._tail[idx], x)

    def survival_gt(self, x: ArrayLike) -> ArrayLike:
        arr = np.asarray(x, dtype=np.float64)
        idx = np.searchsorted(np.asarray(self.values), arr, side="right")
        return _out(self._tail[idx], x)

    def survival_pseudo_inverse(self, y: ArrayLike) -> ArrayLike:
        arr = _as_open_unit(y, "y")
        # S equals tail[j] on (values[j-1], values[j]]; the infimum of the
        # first interval with tail[j] <= y is its open left end values[j-1]
        idx = np.searchsorted(-self._tail[1:], -arr, side="left")
        return _out(np.asarray(self.values)[idx], y)

    def quantile(self, u: ArrayLike) -> ArrayLike:
        arr = _as_open_unit(u, "u")
        idx = np.searchsorted(self._cum, arr, side="left")
        idx = np.minimum(idx, len(self.values) - 1)
        return _out(np.asarray(self.values)[idx], u)


@dataclass(frozen=True)
class Bernoulli(DistributionSpec):
    p: float = 0.5
    _atoms: FiniteDiscrete = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        p = float(self.p)
        if not (0.0 < p < 1.0):
            raise DomainError(f"Bernoulli p must lie strictly inside (0,1), got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "_atoms", FiniteDiscrete((0.0, 1.0), (1.0 - p, p)))

    @property
    def label(self) -> str:
        return f"bern:{self.p:g}"

    def as_finite(self) -> FiniteDiscrete:
        return self._atoms

    def cdf(self, x: ArrayLike) -> ArrayLike:
        return self._atoms.cdf(x)

    def survival_geq(self, x: ArrayLike) -> ArrayLike:
        return self._atoms.survival_geq(x)

    def survival_gt(self, x: ArrayLike) -> ArrayLike:
        return self._atoms.survival_gt(x)

    def survival_pseudo_inverse(self, y: ArrayLike) -> ArrayLike:
        return self._atoms.survival_pseudo_inverse(y)

    def quantile(self, u: ArrayLike) -> ArrayLike:
        return self._atoms.quantile(u)


def atoms_of(d: DistributionSpec) -> FiniteDiscrete:
    if isinstance(d, Bernoulli):
        return d.as_finite()
    if isinstance(d, FiniteDiscrete):
        return d
    raise DomainError(f"{d.label} has no atoms")


# ---------------- module-level operations ----------------

def cdf(d: DistributionSpec, x: ArrayLike) -> ArrayLike:
    return d.cdf(x)


def survival_geq(d: DistributionSpec, x: ArrayLike) -> ArrayLike:
    return d.survival_geq(x)


def survival_gt(d: DistributionSpec, x: ArrayLike) -> ArrayLike:
    return d.survival_gt(x)


def survival_pseudo_inverse(d: DistributionSpec, y: ArrayLike) -> ArrayLike:
    return d.survival_pseudo_inverse(y)


def quantile(d: DistributionSpec, u: ArrayLike) -> ArrayLike:
    return d.quantile(u)


def open_uniform(rng: np.random.Generator, size: Any = None) -> ArrayLike:
    """Uniforms on the open interval (0,1), 53-bit grid shifted by half a step."""
    raw = rng.integers(0, 2**53, size=size, dtype=np.int64)
    out = (np.asarray(raw, dtype=np.float64) + 0.5) * 2.0**-53
    if size is None:
        return float(out)
    return out


def sample(d: DistributionSpec, rng: np.random.Generator) -> float:
    return float(d.quantile(open_uniform(rng)))


def sample_array(d: DistributionSpec, rng: np.random.Generator, shape: Any) -> np.ndarray:
    return np.asarray(d.quantile(open_uniform(rng, shape)), dtype=np.float64)


# ---------------- parsing ----------------

def _parse_number(raw: str, what: str) -> float:
    s = raw.strip()
    try:
        if "/" in s:
            return float(Fraction(s))
        return float(s)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"{what}: not a number: {raw!r}") from None


def parse_distribution(text: str) -> DistributionSpec:
    """
    Parse `uniform`, `exp:<rate>`, `bern:<p>` or `disc:<v1:p1,v2:p2,...>`.

    Angle brackets are optional. Probabilities may be fractions (`1/3`).
    """
    raw = (text or "").strip()
    if not raw:
        raise DomainError("empty distribution spec")
    head, _, rest = raw.partition(":")
    head = head.strip().lower()
    rest = rest.strip()
    if rest.startswith("<") and rest.endswith(">"):
        rest = rest[1:-1].strip()

    if head in ("uniform", "unif", "u"):
        if rest:
            raise DomainError(f"uniform takes no parameters: {raw!r}")
        return ContinuousUniform01()
    if head in ("exp", "exponential"):
        return Exponential(_parse_number(rest or "1", "exp rate"))
    if head in ("bern", "bernoulli"):
        if not rest:
            raise DomainError("bern needs p, e.g. bern:0.5")
        return Bernoulli(_parse_number(rest, "bern p"))
    if head in ("disc", "discrete"):
        values = []
        probs = []
        exact = []
        for part in rest.split(","):
            part = part.strip()
            if not part:
                continue
            if ":" not in part:
                raise DomainError(f"disc atom must be value:prob, got {part!r}")
            v, pr = part.split(":", 1)
            values.append(_parse_number(v, "disc value"))
            probs.append(_parse_number(pr, "disc prob"))
            try:
                exact.append(Fraction(pr.strip()))
            except (ValueError, ZeroDivisionError):
                exact.append(None)
        if not values:
            raise DomainError(f"disc needs at least one atom: {raw!r}")
        # fractions that sum to exactly 1 should not fail on float rounding
        if all(e is not None for e in exact) and sum(exact) == 1:
            probs = [float(e) for e in exact]
            probs[-1] = 1.0 - math.fsum(probs[:-1])
        return FiniteDiscrete(tuple(values), tuple(probs))
    raise DomainError(f"unknown distribution {raw!r}; expected uniform, exp:<rate>, bern:<p>, disc:<v:p,...>")


__all__ = [
    "DistributionSpec",
    "ContinuousUniform01",
    "Exponential",
    "Bernoulli",
    "FiniteDiscrete",
    "atoms_of",
    "cdf",
    "survival_geq",
    "survival_gt",
    "survival_pseudo_inverse",
    "quantile",
    "open_uniform",
    "sample",
    "sample_array",
    "parse_distribution",
    "LogProb",
]
