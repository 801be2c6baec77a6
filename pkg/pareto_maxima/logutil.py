# pareto_maxima/logutil.py
from __future__ import annotations

import sys
import time
from typing import Dict

from .config import _env_float, quiet

ERROR_LOG_EVERY_SEC = _env_float("PARETO_ERROR_LOG_EVERY_SEC", 10.0)

_err_last: Dict[str, float] = {}


def log(tag: str, msg: str) -> None:
    # stderr: stdout carries CSV
    if quiet():
        return
    print(f"[pareto-{tag}] {msg}", file=sys.stderr, flush=True)


def log_ratelimited(key: str, tag: str, msg: str) -> None:
    now = time.time()
    last = _err_last.get(key, 0.0)
    if now - last >= ERROR_LOG_EVERY_SEC:
        _err_last[key] = now
        print(f"[pareto-{tag}] {msg}", file=sys.stderr, flush=True)
