# ops/__init__.py
"""
Subcommand registry.

Each ops/<module>.py registers one handler with @register_op. Modules are
imported on first use. PARETO_OPS (comma list, "all", "*" or "none") limits
which subcommands may run.
"""
from __future__ import annotations

import importlib
import os
from typing import Any, Callable, Dict, FrozenSet, List, Optional

from pareto_maxima.errors import ConfigError
from pareto_maxima.logutil import log

Handler = Callable[[Optional[Dict[str, Any]]], Dict[str, Any]]

OPS_REGISTRY: Dict[str, Handler] = {}

# subcommand -> module under ops/
OP_TO_MODULE: Dict[str, str] = {
    "gamma": "gamma",
    "exact": "exact",
    "bernoulli": "bernoulli",
    "simulate": "simulate",
    "sweep": "sweep",
    "figure": "figure",
}

# module -> "Type: message" of its last failed import
IMPORT_ERRORS: Dict[str, str] = {}


def register_op(name: str) -> Callable[[Handler], Handler]:
    if name not in OP_TO_MODULE:
        raise ConfigError(f"register_op: {name!r} has no entry in OP_TO_MODULE")

    def _decorator(fn: Handler) -> Handler:
        OPS_REGISTRY[name] = fn
        return fn

    return _decorator


def enabled_ops() -> Optional[FrozenSet[str]]:
    """None when every op is enabled, else the known names PARETO_OPS lists."""
    parts = {p.strip() for p in os.getenv("PARETO_OPS", "").split(",") if p.strip()}
    lowered = {p.lower() for p in parts}
    if not parts or lowered & {"*", "all"}:
        return None
    if "none" in lowered:
        return frozenset()
    unknown = sorted(parts - set(OP_TO_MODULE))
    if unknown:
        log("ops", f"PARETO_OPS lists unknown ops {unknown}; ignored")
    return frozenset(parts & set(OP_TO_MODULE))


def list_ops() -> List[str]:
    allowed = enabled_ops()
    return sorted(name for name in OP_TO_MODULE if allowed is None or name in allowed)


def _import(name: str) -> None:
    module = OP_TO_MODULE[name]
    try:
        importlib.import_module(f"{__name__}.{module}")
    except Exception as e:
        IMPORT_ERRORS[module] = f"{type(e).__name__}: {e}"
        log("ops", f"failed to import ops.{module}: {IMPORT_ERRORS[module]}")
        raise ConfigError(f"op {name!r} failed to import: {IMPORT_ERRORS[module]}") from e
    IMPORT_ERRORS.pop(module, None)


def get_op(name: str) -> Handler:
    if name not in OP_TO_MODULE:
        raise ConfigError(f"unknown op {name!r}; known ops: {sorted(OP_TO_MODULE)}")
    enabled = list_ops()
    if name not in enabled:
        raise ConfigError(f"op {name!r} is disabled by PARETO_OPS; enabled: {enabled}")
    if name not in OPS_REGISTRY:
        _import(name)
    fn = OPS_REGISTRY.get(name)
    if fn is None:
        raise ConfigError(f"ops.{OP_TO_MODULE[name]} registered no handler for {name!r}")
    return fn


__all__ = ["Handler", "OPS_REGISTRY", "OP_TO_MODULE", "IMPORT_ERRORS", "register_op", "enabled_ops", "list_ops", "get_op"]
