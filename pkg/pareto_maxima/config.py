# pareto_maxima/config.py
from __future__ import annotations

import os

FALLBACK_SEED = 20190601


def _env_int(name: str, default: int) -> int:
    v = os.getenv(name)
    if v is None or str(v).strip() == "":
        return default
    try:
        # allow "1e8" style caps
        return int(float(str(v).strip()))
    except Exception:
        return default


def _env_float(name: str, default: float) -> float:
    v = os.getenv(name)
    if v is None or str(v).strip() == "":
        return default
    try:
        return float(str(v).strip())
    except Exception:
        return default


def _env_bool(name: str, default: bool = False) -> bool:
    v = os.getenv(name)
    if v is None:
        return default
    s = str(v).strip().lower()
    if s in ("1", "true", "yes", "y", "on"):
        return True
    if s in ("0", "false", "no", "n", "off"):
        return False
    return default


def default_seed() -> int:
    """Root seed: PARETO_SEED if set, else the documented constant."""
    return max(0, _env_int("PARETO_SEED", FALLBACK_SEED))


def quiet() -> bool:
    return _env_bool("PARETO_QUIET", False)


# ---------------- caps ----------------

RECURRENCE_N_CAP = _env_int("PARETO_RECURRENCE_N_CAP", 10**8)
ALT_EXACT_N_CAP = _env_int("PARETO_ALT_EXACT_N_CAP", 2000)
ORACLE_TUPLE_CAP = _env_int("PARETO_ORACLE_TUPLE_CAP", 10**7)
BRUTE_FORCE_CAP = _env_int("PARETO_BRUTE_FORCE_CAP", 10**7)
VARIANCE_MAX_N = _env_int("PARETO_VARIANCE_MAX_N", 10**9)
PREFIX_WIDTH_CAP = _env_int("PARETO_PREFIX_WIDTH_CAP", 4096)

# ---------------- numerics ----------------

ALT_UNRELIABLE_ULPS = _env_float("PARETO_ALT_UNRELIABLE_ULPS", 1e6)
PAIR_WARN_K = _env_int("PARETO_PAIR_WARN_K", 400)
QUAD_LIMIT = _env_int("PARETO_QUAD_LIMIT", 200)
# digits a linear-space subtraction may lose before it is flagged
CANCELLATION_DIGITS = _env_float("PARETO_CANCELLATION_DIGITS", 8.0)

# ---------------- simulation ----------------

# elements (reps * n * k) generated per chunk; fixed so that serial and
# parallel runs split replications identically
MC_CHUNK_ELEMENTS = _env_int("PARETO_MC_CHUNK_ELEMENTS", 2_000_000)
BOOTSTRAP_RESAMPLES = _env_int("PARETO_BOOTSTRAP_RESAMPLES", 200)
# largest n*k matrix a single sample may hold
MAX_MATRIX_ELEMENTS = _env_int("PARETO_MAX_MATRIX_ELEMENTS", 10**8)
