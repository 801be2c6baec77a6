# pareto_maxima/montecarlo.py
"""
Simulation engine.

Samples are n x k matrices (row i is vector i, row 0 plays "vector 1").
Replications draw from np.random.default_rng([seed, ...]) keyed by a chunk
or replication counter, so serial and threaded runs give identical numbers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from . import config
from .distributions import DistributionSpec, open_uniform, sample_array
from .errors import CensoringError, DomainError, ResourceLimitError
from .logutil import log

RngState = Union[int, np.random.Generator, None]
T = TypeVar("T")

KINDS = ("strong", "weak")
FERGUSON_SAMPLERS = ("direct", "max_cdf")

# skyline candidates compared per block
_SKYLINE_BLOCK = 2048
# rows peeled one at a time off the top of the sum order before blocking
_SKYLINE_PEEL = 256

# key spaces under the root seed
_KEY_REPLICATION = 0
_KEY_BOOTSTRAP = 1


# ---------------- types ----------------

@dataclass(frozen=True, eq=False)
class SampleMatrix:
    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DomainError(f"sample matrix must be n x k with n, k >= 1, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("sample matrix entries must be finite")
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    @property
    def k(self) -> int:
        return int(self.entries.shape[1])

    def prefix(self, width: int) -> "SampleMatrix":
        if not (1 <= width <= self.k):
            raise DomainError(f"prefix width must lie in [1, {self.k}], got {width}")
        return SampleMatrix(self.entries[:, :width])


@dataclass(frozen=True)
class FrontResult:
    strong: FrozenSet[int]
    weak: FrozenSet[int]

    def __post_init__(self) -> None:
        if not self.strong <= self.weak:
            raise DomainError("strong front must be contained in the weak front")


@dataclass(frozen=True)
class EstimateWithError:
    estimate: float
    std_error: float
    reps: int

    def __post_init__(self) -> None:
        if not (0.0 <= self.estimate <= 1.0):
            raise DomainError(f"estimate must lie in [0,1], got {self.estimate!r}")
        if not (self.std_error >= 0.0) or self.reps < 1:
            raise DomainError("std_error must be >= 0 and reps >= 1")

    def within(self, target: float, n_se: float = 3.0) -> bool:
        return abs(self.estimate - target) <= n_se * self.std_error


@dataclass(frozen=True)
class PrefixDomination:
    """M = max_i G_i with T_i = first coordinate where vector 1 beats vector i."""

    value: int
    width: int
    censored: bool

    def is_member(self, width: Optional[int] = None) -> bool:
        """Whether vector 1 is a strong maximum of the width-w prefix (M < w)."""
        w = self.width if width is None else int(width)
        if not (1 <= w <= self.width):
            raise DomainError(f"width must lie in [1, {self.width}], got {w}")
        return self.value < w


@dataclass(frozen=True)
class CoupledFronts:
    front_U: FrozenSet[int]
    front_F: FrozenSet[int]
    front_B: FrozenSet[int]
    threshold_p: float

    @property
    def inclusions_hold(self) -> bool:
        return self.front_B <= self.front_F <= self.front_U


@dataclass(frozen=True)
class RatioSummary:
    median: float
    std_error: float
    reps: int
    ratios: Tuple[float, ...] = field(repr=False)
    widenings: int = 0


# ---------------- seeding ----------------

def _seed_of(state: RngState) -> int:
    if state is None:
        return config.default_seed()
    if isinstance(state, np.random.Generator):
        return int(state.integers(0, 2**63 - 1))
    seed = int(state)
    if seed < 0:
        raise DomainError(f"seed must be >= 0, got {seed}")
    return seed


def _rng(state: RngState) -> np.random.Generator:
    if isinstance(state, np.random.Generator):
        return state
    return np.random.default_rng(_seed_of(state))


def _run_chunks(fn: Callable[[int], T], count: int, workers: int) -> List[T]:
    # results always come back in chunk order
    if workers > 1 and count > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, range(count)))
    return [fn(i) for i in range(count)]


# ---------------- samples ----------------

def generate_sample(
    d: DistributionSpec,
    k: int,
    n: int,
    rng_state: RngState = None,
    *,
    max_elements: Optional[int] = None,
) -> SampleMatrix:
    k, n = int(k), int(n)
    if k < 1 or n < 1:
        raise DomainError(f"k and n must be >= 1, got k={k} n={n}")
    cap = config.MAX_MATRIX_ELEMENTS if max_elements is None else int(max_elements)
    if n * k > cap:
        raise ResourceLimitError(f"n*k = {n * k} exceeds the matrix budget {cap}")
    return SampleMatrix(sample_array(d, _rng(rng_state), (n, k)))


# ---------------- fronts ----------------

def _matrix(m: Union[SampleMatrix, np.ndarray]) -> np.ndarray:
    if isinstance(m, SampleMatrix):
        return m.entries
    return SampleMatrix(m).entries


def _dominated_rows(x: np.ndarray, strict: bool) -> np.ndarray:
    """Pairwise check of every row against all others, in row blocks."""
    n, k = x.shape
    out = np.zeros(n, dtype=bool)
    block = max(1, config.MC_CHUNK_ELEMENTS // max(1, n * k))
    for start in range(0, n, block):
        rows = x[start : start + block]
        dom = (x[None, :, :] >= rows[:, None, :]).all(axis=-1)
        if strict:
            dom &= (x[None, :, :] > rows[:, None, :]).any(axis=-1)
        else:
            # a row never eliminates itself, duplicates do
            dom[np.arange(rows.shape[0]), np.arange(start, start + rows.shape[0])] = False
        out[start : start + rows.shape[0]] = dom.any(axis=1)
    return out


def strong_front(m: Union[SampleMatrix, np.ndarray]) -> FrozenSet[int]:
    """Rows not weakly dominated (>= in every coordinate) by any other row."""
    return frozenset(np.flatnonzero(~_dominated_rows(_matrix(m), strict=False)).tolist())


def weak_front(m: Union[SampleMatrix, np.ndarray]) -> FrozenSet[int]:
    """Rows not strictly dominated (>= everywhere, > somewhere) by any other row."""
    return frozenset(np.flatnonzero(~_dominated_rows(_matrix(m), strict=True)).tolist())


def batch_front_masks(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """x: (B, n, k) -> strong, weak membership masks of shape (B, n)."""
    n = x.shape[1]
    # ge[b, i, j]: X_j >= X_i in every coordinate
    ge = (x[:, None, :, :] >= x[:, :, None, :]).all(axis=-1)
    gt = (x[:, None, :, :] > x[:, :, None, :]).any(axis=-1)
    off = ~np.eye(n, dtype=bool)
    strong = ~(ge & off).any(axis=2)
    weak = ~(ge & gt & off).any(axis=2)
    return strong, weak


def _covered(cands: np.ndarray, pool: np.ndarray, offset: Optional[int] = None) -> np.ndarray:
    """
    Mask over cands: some pool row is >= in every coordinate. Rows are
    distinct, so this is strict dominance. offset: cands[i] is pool[offset + i].

    Pool blocks run in order and rows already covered are not compared
    again, so a pool sorted strongest first exits early.
    """
    out = np.zeros(cands.shape[0], dtype=bool)
    if pool.shape[0] == 0 or cands.shape[0] == 0:
        return out
    block = max(1, config.MC_CHUNK_ELEMENTS // max(1, cands.shape[0] * cands.shape[1]))
    for start in range(0, pool.shape[0], block):
        idx = np.flatnonzero(~out)
        if idx.size == 0:
            break
        p = pool[start : start + block]
        ge = (p[None, :, :] >= cands[idx][:, None, :]).all(axis=-1)
        if offset is not None:
            # a row never covers itself
            own = idx + offset - start
            hit = (own >= 0) & (own < p.shape[0])
            ge[np.flatnonzero(hit), own[hit]] = False
        out[idx] = ge.any(axis=1)
    return out


def _skyline(uniq: np.ndarray) -> np.ndarray:
    """
    Indices of distinct rows that no other distinct row dominates.

    Sweep in decreasing coordinate sum: a dominator of a distinct row has a
    larger sum, so each row is checked only against the skyline found so
    far. The top rows are peeled singly, each dropping every row it covers
    in one vectorized pass; the remainder goes through in blocks.
    """
    order = np.argsort(-uniq.sum(axis=1), kind="stable")
    vals = uniq[order]
    alive = order
    peeled: List[int] = []
    while len(peeled) < _SKYLINE_PEEL and alive.size > _SKYLINE_BLOCK:
        peeled.append(int(alive[0]))
        keep = ~(vals[1:] >= vals[0]).all(axis=1)
        alive, vals = alive[1:][keep], vals[1:][keep]
    sky_idx: List[np.ndarray] = [np.asarray(peeled, dtype=np.int64)]
    sky = uniq[sky_idx[0]]
    for start in range(0, alive.size, _SKYLINE_BLOCK):
        ids = alive[start : start + _SKYLINE_BLOCK]
        cand = vals[start : start + _SKYLINE_BLOCK]
        keep = ~_covered(cand, sky)
        ids, cand = ids[keep], cand[keep]
        keep = ~_covered(cand, cand, offset=0)
        sky = np.concatenate([sky, cand[keep]])
        sky_idx.append(ids[keep])
    idx = np.concatenate(sky_idx)
    # equal float sums can put a dominator after its victim
    keep = np.ones(idx.size, dtype=bool)
    for start in range(0, idx.size, _SKYLINE_BLOCK):
        keep[start : start + _SKYLINE_BLOCK] = ~_covered(sky[start : start + _SKYLINE_BLOCK], sky, offset=start)
    return idx[keep]


def fronts_fast(m: Union[SampleMatrix, np.ndarray]) -> FrontResult:
    """
    Both fronts from one skyline pass over the distinct rows, presorted by
    coordinate sum. A distinct row on the skyline gives weak maxima; it gives
    a strong maximum only when it occurs once.
    """
    x = _matrix(m)
    uniq, inverse, counts = np.unique(x, axis=0, return_inverse=True, return_counts=True)
    inverse = np.asarray(inverse).reshape(-1)
    on_sky = np.zeros(uniq.shape[0], dtype=bool)
    on_sky[_skyline(uniq)] = True
    single = on_sky & (counts == 1)
    weak = np.flatnonzero(on_sky[inverse])
    strong = np.flatnonzero(single[inverse])
    return FrontResult(frozenset(strong.tolist()), frozenset(weak.tolist()))


def strong_front_fast(m: Union[SampleMatrix, np.ndarray]) -> FrozenSet[int]:
    return fronts_fast(m).strong


def fronts(m: Union[SampleMatrix, np.ndarray]) -> FrontResult:
    return FrontResult(strong_front(m), weak_front(m))


# ---------------- probability estimates ----------------

def _first_row_hits(x: np.ndarray, kind: str) -> int:
    """x: (B, n, k); count replications where row 0 is in the requested front."""
    first = x[:, :1, :]
    rest = x[:, 1:, :]
    ge = (rest >= first).all(axis=-1)
    if kind == "weak":
        ge &= (rest > first).any(axis=-1)
    return int(np.count_nonzero(~ge.any(axis=1)))


def estimate_p(
    d: DistributionSpec,
    k: int,
    n: int,
    reps: int,
    rng_state: RngState = None,
    kind: str = "strong",
    *,
    workers: int = 1,
) -> EstimateWithError:
    """Fraction of replications in which vector 1 is a strong (or weak) maximum."""
    k, n, reps = int(k), int(n), int(reps)
    if k < 1 or n < 1:
        raise DomainError(f"k and n must be >= 1, got k={k} n={n}")
    if reps < 100:
        raise DomainError(f"reps must be >= 100, got {reps}")
    if kind not in KINDS:
        raise DomainError(f"kind must be one of {KINDS}, got {kind!r}")
    seed = _seed_of(rng_state)
    batch = max(1, config.MC_CHUNK_ELEMENTS // (n * k))
    sizes = [min(batch, reps - s) for s in range(0, reps, batch)]

    def one(idx: int) -> int:
        rng = np.random.default_rng([seed, _KEY_REPLICATION, idx])
        return _first_row_hits(sample_array(d, rng, (sizes[idx], n, k)), kind)

    hits = sum(_run_chunks(one, len(sizes), workers))
    est = hits / reps
    se = math.sqrt(est * (1.0 - est) / reps)
    log("mc", f"estimate_p law={d.label} kind={kind} k={k} n={n} reps={reps} est={est:.6g} se={se:.3g}")
    return EstimateWithError(est, se, reps)


@dataclass(frozen=True)
class FrontSizeEstimate:
    mean: float
    variance: float
    se_mean: float
    se_variance: float
    reps: int


def estimate_front_size(
    d: DistributionSpec,
    k: int,
    n: int,
    reps: int,
    rng_state: RngState = None,
    *,
    workers: int = 1,
) -> FrontSizeEstimate:
    """Sample mean and variance of |MAX| (strong front size)."""
    k, n, reps = int(k), int(n), int(reps)
    if k < 1 or n < 1:
        raise DomainError(f"k and n must be >= 1, got k={k} n={n}")
    if reps < 100:
        raise DomainError(f"reps must be >= 100, got {reps}")
    seed = _seed_of(rng_state)
    batch = max(1, config.MC_CHUNK_ELEMENTS // (n * n * k))
    sizes = [min(batch, reps - s) for s in range(0, reps, batch)]

    def one(idx: int) -> np.ndarray:
        rng = np.random.default_rng([seed, _KEY_REPLICATION, idx])
        strong, _ = batch_front_masks(sample_array(d, rng, (sizes[idx], n, k)))
        return strong.sum(axis=1)

    s = np.concatenate(_run_chunks(one, len(sizes), workers)).astype(np.float64)
    mean = float(np.mean(s))
    dev2 = (s - mean) ** 2
    var = float(np.sum(dev2) / (reps - 1))
    # delta-method standard error of the sample variance
    m4 = float(np.mean(dev2**2))
    se_var = math.sqrt(max(0.0, m4 - var * var) / reps)
    return FrontSizeEstimate(mean, var, math.sqrt(var / reps), se_var, reps)


# ---------------- prefix domination ----------------

def prefix_domination_max(m: Union[SampleMatrix, np.ndarray]) -> PrefixDomination:
    """
    T_i = min{j : X_1j > X_ij}, G_i = T_i - 1, M = max_{i>=2} G_i (0 when n = 1).

    When some T_i is beyond the available width w the result is right-censored:
    value is then the lower bound w and vector 1 is dominated at every prefix.
    """
    x = _matrix(m)
    width = x.shape[1]
    if x.shape[0] == 1:
        return PrefixDomination(0, width, False)
    beats = x[0] > x[1:]
    found = beats.any(axis=1)
    if not found.all():
        return PrefixDomination(width, width, True)
    return PrefixDomination(int(np.argmax(beats, axis=1).max()), width, False)


def _bootstrap_median(ratios: np.ndarray, seed: int) -> float:
    rng = np.random.default_rng([seed, _KEY_BOOTSTRAP, ratios.size])
    idx = rng.integers(0, ratios.size, size=(config.BOOTSTRAP_RESAMPLES, ratios.size))
    meds = np.median(ratios[idx], axis=1)
    return float(np.std(meds, ddof=1))


def summarize_ratios(ratios: Sequence[float], seed: int, widenings: int = 0) -> RatioSummary:
    arr = np.asarray(ratios, dtype=np.float64)
    if arr.size < 2:
        raise DomainError("need at least two ratios to summarize")
    return RatioSummary(
        median=float(np.median(arr)),
        std_error=_bootstrap_median(arr, seed),
        reps=int(arr.size),
        ratios=tuple(float(r) for r in arr),
        widenings=widenings,
    )


def _prefix_max_one(
    d: DistributionSpec, k_max: int, n: int, seed: int, rep: int, max_elements: int
) -> Tuple[int, int]:
    rng = np.random.default_rng([seed, _KEY_REPLICATION, rep])
    x = sample_array(d, rng, (n, k_max))
    res = prefix_domination_max(x)
    if not res.censored:
        return res.value, 0
    beats = x[0] > x[1:]
    found = beats.any(axis=1)
    best = int(np.argmax(beats[found], axis=1).max()) if found.any() else 0
    # only vector 1 and the rows it has not beaten yet get more columns
    pending = int((~found).sum())
    width = k_max
    widened = 0
    while pending:
        if 2 * width > config.PREFIX_WIDTH_CAP:
            raise CensoringError(
                f"prefix domination still censored at width {width} (cap {config.PREFIX_WIDTH_CAP}); "
                f"law={d.label} n={n} rep={rep} censored rows={pending}"
            )
        need = (1 + pending) * width
        if need > max_elements:
            raise ResourceLimitError(
                f"widening {pending} censored rows to width {2 * width} needs {need} elements, "
                f"over the matrix budget {max_elements}"
            )
        ext = sample_array(d, rng, (1 + pending, width))
        beats = ext[0] > ext[1:]
        found = beats.any(axis=1)
        if found.any():
            best = max(best, width + int(np.argmax(beats[found], axis=1).max()))
        pending -= int(found.sum())
        width *= 2
        widened += 1
    return best, widened


def estimate_M_over_logn(
    d: DistributionSpec,
    k_max: int,
    n: int,
    reps: int,
    rng_state: RngState = None,
    *,
    workers: int = 1,
    max_elements: Optional[int] = None,
) -> RatioSummary:
    """
    Median of M / log n over replications. Censored rows are widened
    geometrically; each widening draws fresh columns for vector 1 and the
    still-censored rows only, and must fit the matrix budget too.
    """
    k_max, n, reps = int(k_max), int(n), int(reps)
    if k_max < 1 or n < 2 or reps < 2:
        raise DomainError(f"need k_max >= 1, n >= 2, reps >= 2; got {k_max}, {n}, {reps}")
    cap = config.MAX_MATRIX_ELEMENTS if max_elements is None else int(max_elements)
    if n * k_max > cap:
        raise ResourceLimitError(f"n*k_max = {n * k_max} exceeds the matrix budget {cap}")
    seed = _seed_of(rng_state)
    out = _run_chunks(lambda r: _prefix_max_one(d, k_max, n, seed, r, cap), reps, workers)
    widenings = sum(w for _, w in out)
    if widenings:
        log("mc", f"prefix width {k_max} censored {sum(1 for _, w in out if w)} of {reps} reps; widened")
    ratios = [m / math.log(n) for m, _ in out]
    return summarize_ratios(ratios, seed, widenings)


# ---------------- Ferguson geometric maxima ----------------

def ferguson_limit(alpha: float) -> float:
    """Almost-sure limit of M_n / log n for geometric(alpha) maxima."""
    return -1.0 / math.log1p(-_check_alpha(alpha))


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie strictly inside (0,1), got {alpha!r}")
    return alpha


def ferguson_max_ratio(
    alpha: float,
    n: int,
    reps: int,
    rng_state: RngState = None,
    *,
    sampler: str = "direct",
    workers: int = 1,
) -> List[float]:
    """
    max of n-1 iid geometric(alpha) failure counts (support 0, 1, ...) over log n,
    one value per replication.

    sampler="max_cdf" draws the maximum by inverting
    P(M <= m) = (1 - (1-alpha)^(m+1))^(n-1) instead of drawing n-1 variables.
    """
    alpha = _check_alpha(alpha)
    n, reps = int(n), int(reps)
    if n < 2 or reps < 1:
        raise DomainError(f"need n >= 2 and reps >= 1, got n={n} reps={reps}")
    if sampler not in FERGUSON_SAMPLERS:
        raise DomainError(f"sampler must be one of {FERGUSON_SAMPLERS}, got {sampler!r}")
    seed = _seed_of(rng_state)
    log_n = math.log(n)

    if sampler == "max_cdf":
        rng = np.random.default_rng([seed, _KEY_REPLICATION, 0])
        u = open_uniform(rng, reps)
        one_minus_v = -np.expm1(np.log(u) / (n - 1))
        m = np.ceil(np.log(one_minus_v) / math.log1p(-alpha)) - 1.0
        return [float(v) / log_n for v in np.maximum(m, 0.0)]

    batch = max(1, config.MC_CHUNK_ELEMENTS // (n - 1))
    sizes = [min(batch, reps - s) for s in range(0, reps, batch)]

    def one(idx: int) -> List[float]:
        rng = np.random.default_rng([seed, _KEY_REPLICATION, idx])
        g = rng.geometric(alpha, size=(sizes[idx], n - 1)) - 1
        return [float(v) / log_n for v in g.max(axis=1)]

    out: List[float] = []
    for part in _run_chunks(one, len(sizes), workers):
        out.extend(part)
    return out


# ---------------- quantile coupling ----------------

def coupled_front_chain(
    k: int,
    n: int,
    rng_state: RngState,
    d: DistributionSpec,
    threshold_x: float,
) -> CoupledFronts:
    """
    One uniform matrix U pushed through F^-1 (X) and then the threshold
    indicator B = 1{X > x}; the strong fronts satisfy B <= F <= U.
    """
    k, n = int(k), int(n)
    if k < 1 or n < 1:
        raise DomainError(f"k and n must be >= 1, got k={k} n={n}")
    thr = float(threshold_x)
    p = float(d.survival_gt(thr))
    if not (0.0 < p < 1.0):
        raise DomainError(f"threshold {thr!r} gives P(X > x) = {p!r}; need a value strictly inside (0,1)")
    u = open_uniform(_rng(rng_state), (n, k))
    x = np.asarray(d.quantile(u), dtype=np.float64)
    b = (x > thr).astype(np.float64)
    return CoupledFronts(
        front_U=strong_front_fast(u),
        front_F=strong_front_fast(x),
        front_B=strong_front_fast(b),
        threshold_p=p,
    )


__all__ = [
    "SampleMatrix",
    "FrontResult",
    "EstimateWithError",
    "PrefixDomination",
    "CoupledFronts",
    "RatioSummary",
    "generate_sample",
    "strong_front",
    "weak_front",
    "strong_front_fast",
    "fronts_fast",
    "fronts",
    "estimate_p",
    "FrontSizeEstimate",
    "estimate_front_size",
    "batch_front_masks",
    "prefix_domination_max",
    "estimate_M_over_logn",
    "summarize_ratios",
    "ferguson_limit",
    "ferguson_max_ratio",
    "coupled_front_chain",
]
