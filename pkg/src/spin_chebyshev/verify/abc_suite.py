"""This file contains the IdentitySuite abstract base class.

A suite evaluates a family of numerical identities and records one
residual per trial under a named check. The abstract method _run()
should draw its inputs from the supplied generator and call record().
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from logging import Logger
from statistics import mean
from typing import Dict, List

import numpy as np

from spin_chebyshev.exceptions import DomainError, ToleranceError

DEFAULT_SEED = 20240229


@dataclass
class Check:
    """Residuals of one identity over multiple trials."""

    name: str
    tolerance: float
    trials: List[float] = field(default_factory=list)

    def __repr__(self) -> str:
        """Pretty print the check."""
        return f"Check({self.name}, worst={self.worst:.3g}, tol={self.tolerance:.1g})"

    def add_trial(self, value: float):
        """Add a trial residual."""
        self.trials.append(float(value))

    @property
    def average(self) -> float:
        """Return the mean residual."""
        return mean(self.trials)

    @property
    def best(self) -> float:
        """Return the smallest residual."""
        return min(self.trials)

    @property
    def worst(self) -> float:
        """Return the largest residual."""
        return max(self.trials)

    @property
    def passed(self) -> bool:
        """Return True if every residual is within tolerance."""
        return self.worst <= self.tolerance


class IdentitySuite(ABC):
    """Abstract class for a suite of identity checks."""

    NAME = "suite"

    CONFIGS = {
        "strict": {"tolerance_scale": 0.1},
        "default": {"tolerance_scale": 1.0},
        "loose": {"tolerance_scale": 100.0},
    }

    def __init__(
        self,
        name: str = None,
        tolerance_scale: float = 1.0,
        tol: float = None,
        perturb: float = 0.0,
        seed: int = DEFAULT_SEED,
        logger: Logger = None,
    ):
        """Initialize the suite.

        Args:
            name (str): Suite name used in reports, defaults to NAME.
            tolerance_scale (float): Multiplier on every default tolerance.
            tol (float): If given, replaces every tolerance.
            perturb (float): Added to every residual, for negative controls.
            seed (int): Seed of the random inputs.
            logger (Logger): Destination for per-check debug output.
        """
        self.name = name or self.NAME
        self.tolerance_scale = tolerance_scale
        self.tol = tol
        self.perturb = perturb
        self.seed = seed
        self.logger = logger
        self.clear_saved_results()

    @classmethod
    def from_predefined_config(cls, profile: str = "default", **kwargs):
        """Create a suite from a named tolerance profile merged with kwargs."""
        config = cls.CONFIGS.get(profile)
        if not config:
            raise DomainError(
                f"Invalid profile. Choose from {list(cls.CONFIGS.keys())}."
            )
        config = dict(config)
        config.update(kwargs)
        return cls(**config)

    def clear_saved_results(self):
        """Clear all saved results."""
        self.saved_results: Dict[str, Check] = {}

    def tolerance_for(self, default: float) -> float:
        """Return the effective tolerance for a check with the given default."""
        if self.tol is not None:
            return self.tol
        return default * self.tolerance_scale

    def record(self, name: str, residual: complex, default_tol: float):
        """Add a residual under the named check."""
        if name not in self.saved_results:
            self.saved_results[name] = Check(name, self.tolerance_for(default_tol))
        self.saved_results[name].add_trial(float(abs(residual)) + self.perturb)

    def check(self, name: str):
        """Raise ToleranceError if the named check failed."""
        result = self.saved_results[name]
        if not result.passed:
            raise ToleranceError(
                f"{self.name}/{name}: residual {result.worst:.3g} "
                f"exceeds {result.tolerance:.3g}"
            )

    @property
    def passed(self) -> bool:
        """Return True if every check passed."""
        return all(c.passed for c in self.saved_results.values())

    def run(self) -> Dict[str, Check]:
        """Evaluate every identity of the suite with fresh random inputs."""
        self.clear_saved_results()
        self._run(np.random.default_rng(self.seed))
        if self.logger:
            for check in self.saved_results.values():
                self.logger.debug(f"{self.name}: {check!r}")
        return self.saved_results

    @abstractmethod
    def _run(self, rng: np.random.Generator):
        """Record the residuals of the suite's identities."""
        raise NotImplementedError
