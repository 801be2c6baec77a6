import math
import os
from typing import Any, Dict, Optional

try:
    import psutil
except ImportError:
    psutil = None

from pareto_maxima import config
from pareto_maxima.config import _env_float, _env_int

_FLOAT64_BYTES = 8


def _detect_cpu() -> Dict[str, Any]:
    """
    CPU sizing for replication and sweep threads.

      - cores = runnable capacity
      - a few cores stay reserved for the OS
      - PARETO_WORKERS pins the count outright
    """
    # ---- cores ----
    if psutil is not None:
        try:
            total_cores = psutil.cpu_count(logical=True) or 1
        except Exception:
            total_cores = os.cpu_count() or 1
    else:
        total_cores = os.cpu_count() or 1

    reserve_floor = _env_int("PARETO_RESERVED_CORES_FLOOR", 1)
    reserve_cap = _env_int("PARETO_RESERVED_CORES_CAP", 4)
    reserved_cores = min(reserve_cap, max(reserve_floor, total_cores // 4))
    usable_cores = max(1, total_cores - reserved_cores)

    override = _env_int("PARETO_WORKERS", 0)
    workers = max(1, override) if override > 0 else usable_cores

    return {
        "total_cores": int(total_cores),
        "reserved_cores": int(reserved_cores),
        "usable_cores": int(usable_cores),
        "workers": int(workers),
        "pinned": override > 0,
    }


def _detect_memory() -> Dict[str, Any]:
    """
    How large an n x k float64 sample may get. Uses a fraction of available
    RAM (PARETO_MEMORY_FRACTION, default 0.25), never more than the
    configured matrix budget.
    """
    fraction = min(1.0, max(0.01, _env_float("PARETO_MEMORY_FRACTION", 0.25)))
    avail: Optional[int] = None
    if psutil is not None:
        try:
            avail = int(getattr(psutil.virtual_memory(), "available", 0) or 0) or None
        except Exception:
            avail = None

    max_elements = int(config.MAX_MATRIX_ELEMENTS)
    if avail is not None:
        by_mem = int(math.floor(avail * fraction / _FLOAT64_BYTES))
        max_elements = max(1, min(max_elements, by_mem))

    return {
        "available_bytes": avail,
        "fraction": float(fraction),
        "max_matrix_elements": int(max_elements),
    }


def build_worker_profile() -> Dict[str, Any]:
    """
    Returns a stable profile; ops read workers and the matrix budget from it.
    """
    cpu_info = _detect_cpu()
    mem_info = _detect_memory()
    workers = int(cpu_info["workers"])

    return {
        "cpu": cpu_info,
        "memory": mem_info,
        "workers": {
            "mc_workers": workers,
            "sweep_workers": workers,
        },
    }
