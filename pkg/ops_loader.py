from __future__ import annotations

from typing import Dict, Iterable

from ops import OP_TO_MODULE, Handler, get_op, list_ops


def load_ops(names: Iterable[str]) -> Dict[str, Handler]:
    """name -> handler; ConfigError on the first unknown, disabled or broken op."""
    return {name: get_op(name) for name in names}


def describe_ops() -> str:
    """--help epilog line: which subcommands PARETO_OPS leaves enabled."""
    enabled = list_ops()
    line = f"enabled subcommands: {', '.join(enabled) or 'none'}"
    disabled = sorted(set(OP_TO_MODULE) - set(enabled))
    if disabled:
        line += f" (disabled by PARETO_OPS: {', '.join(disabled)})"
    return line
