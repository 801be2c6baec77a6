# ops/_payload.py
"""Shared payload parsing for the op handlers."""
from __future__ import annotations

from typing import Any, Dict, List, Optional

from pareto_maxima.config import default_seed
from pareto_maxima.distributions import DistributionSpec, parse_distribution
from pareto_maxima.errors import ConfigError, DomainError
from pareto_maxima.logspace import HugeN


class PayloadError(ConfigError):
    pass


def unwrap(task_or_payload: Optional[Dict[str, Any]], op: str) -> Dict[str, Any]:
    """
    Accepts either:
      A) payload dict directly
      B) full task dict containing "payload": { ... }
    """
    if task_or_payload is None:
        raise PayloadError(f"{op}: missing payload")
    if not isinstance(task_or_payload, dict):
        raise PayloadError(f"{op}: payload must be a dict")
    payload = task_or_payload.get("payload") if "payload" in task_or_payload else task_or_payload
    if payload is None or not isinstance(payload, dict):
        raise PayloadError(f"{op}: payload must be a dict")
    return payload


def fail(op: str, e: Exception) -> Dict[str, Any]:
    return {"ok": False, "error": f"{op}: {e}", "type": type(e).__name__}


def get_int(payload: Dict[str, Any], key: str, op: str, default: Optional[int] = None) -> int:
    v = payload.get(key, default)
    if v is None:
        raise PayloadError(f"{op}: payload.{key} (integer) is required")
    try:
        return int(v)
    except (TypeError, ValueError):
        raise PayloadError(f"{op}: payload.{key} must be an integer, got {v!r}") from None


def get_float(payload: Dict[str, Any], key: str, op: str, default: Optional[float] = None) -> float:
    v = payload.get(key, default)
    if v is None:
        raise PayloadError(f"{op}: payload.{key} (number) is required")
    try:
        return float(v)
    except (TypeError, ValueError):
        raise PayloadError(f"{op}: payload.{key} must be a number, got {v!r}") from None


def get_choice(payload: Dict[str, Any], key: str, op: str, choices: Dict[str, str], default: str) -> str:
    """Map a user-facing spelling to its canonical name."""
    raw = str(payload.get(key, default)).strip()
    if raw not in choices:
        raise PayloadError(f"{op}: payload.{key} must be one of {sorted(choices)}, got {raw!r}")
    return choices[raw]


def get_dist(payload: Dict[str, Any], op: str, default: Optional[str] = None) -> DistributionSpec:
    raw = payload.get("dist", default)
    if not raw:
        raise PayloadError(f"{op}: payload.dist is required (uniform, exp:<rate>, bern:<p>, disc:<v:p,...>)")
    try:
        return parse_distribution(str(raw))
    except DomainError as e:
        raise PayloadError(f"{op}: {e}") from None


def get_seed(payload: Dict[str, Any], op: str) -> int:
    seed = get_int(payload, "seed", op, default=default_seed())
    if seed < 0:
        raise PayloadError(f"{op}: seed must be >= 0")
    return seed


def get_n(payload: Dict[str, Any], op: str) -> HugeN:
    """n from exactly one of payload.n, payload.log10n, payload.log_n (natural log)."""
    given = [k for k in ("n", "log10n", "log_n") if payload.get(k) is not None]
    if len(given) != 1:
        raise PayloadError(f"{op}: give exactly one of n, log10n, log_n (got {given or 'none'})")
    key = given[0]
    try:
        if key == "n":
            return HugeN.of(int(payload["n"]))
        if key == "log10n":
            return HugeN.from_log10(float(payload["log10n"]))
        return HugeN.from_ln(float(payload["log_n"]))
    except (TypeError, ValueError) as e:
        raise PayloadError(f"{op}: bad {key}: {e}") from None


def split_list(raw: Any, what: str, op: str) -> List[str]:
    if raw is None:
        return []
    if isinstance(raw, (list, tuple)):
        parts = [str(x).strip() for x in raw]
    else:
        parts = [p.strip() for p in str(raw).split(",")]
    parts = [p for p in parts if p]
    if not parts:
        raise PayloadError(f"{op}: {what} list is empty")
    return parts


def get_workers(payload: Dict[str, Any], op: str) -> int:
    return max(1, get_int(payload, "workers", op, default=1))
