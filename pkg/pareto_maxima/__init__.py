# pareto_maxima/__init__.py
"""
Probability that a given vector is a Pareto maximum among n iid random
vectors with k iid coordinates: exact, asymptotic and simulated.
"""
from __future__ import annotations

__version__ = "0.3.0"

from .distributions import (  # noqa: E402
    Bernoulli,
    ContinuousUniform01,
    DistributionSpec,
    Exponential,
    FiniteDiscrete,
    parse_distribution,
)
from .errors import (  # noqa: E402
    CensoringError,
    ConfigError,
    ConvergenceError,
    DomainError,
    OutputError,
    ParetoError,
    ResourceLimitError,
)
from .logspace import HugeN, LogProb  # noqa: E402

__all__ = [
    "__version__",
    "Bernoulli",
    "ContinuousUniform01",
    "DistributionSpec",
    "Exponential",
    "FiniteDiscrete",
    "parse_distribution",
    "HugeN",
    "LogProb",
    "ParetoError",
    "DomainError",
    "ConfigError",
    "ResourceLimitError",
    "CensoringError",
    "ConvergenceError",
    "OutputError",
]
