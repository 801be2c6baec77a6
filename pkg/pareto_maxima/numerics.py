# pareto_maxima/numerics.py
from __future__ import annotations

import math


class CompensatedSum:
    """
    Neumaier running sum that also tracks sum(|t|).

    cancellation_ulps is sum(|t|) / |sum|: each term carries about one
    rounding unit of its own magnitude, so this is the loss measured in
    units of the result.
    """

    def __init__(self) -> None:
        self.sum = 0.0
        self.carry = 0.0
        self.abs_total = 0.0

    def add(self, value: float) -> None:
        t = self.sum + value
        if abs(self.sum) >= abs(value):
            self.carry += (self.sum - t) + value
        else:
            self.carry += (value - t) + self.sum
        self.sum = t
        self.abs_total += abs(value)

    @property
    def total(self) -> float:
        return self.sum + self.carry

    @property
    def cancellation_ulps(self) -> float:
        total = self.total
        if not math.isfinite(total) or not math.isfinite(self.abs_total):
            return math.inf
        if total == 0.0:
            return math.inf if self.abs_total > 0.0 else 0.0
        return self.abs_total / abs(total)


def lost_digits(terms, total: float) -> float:
    """Decimal digits lost when `terms` (linear space) sum to `total`."""
    biggest = max((abs(t) for t in terms), default=0.0)
    if biggest == 0.0:
        return 0.0
    if total == 0.0:
        return math.inf
    return max(0.0, math.log10(biggest / abs(total)))
