"""This is the core verification class VerificationRunner.

It runs a list of identity suites, collects the residual of every named
check, and reports whether each stayed within its tolerance.
"""
import logging
from logging import Logger
from typing import Iterator, List, Tuple

from tqdm import tqdm

from spin_chebyshev.exceptions import DomainError
from spin_chebyshev.verify.abc_suite import IdentitySuite
from spin_chebyshev.verify.suites import SUITES


def build_suites(
    names: List[str], profile: str = "default", **kwargs
) -> List[IdentitySuite]:
    """Instantiate suites by name; "all" selects every suite."""
    if "all" in names:
        names = list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise DomainError(f"Unknown suites {unknown}. Choose from {['all', *SUITES]}.")
    return [SUITES[name].from_predefined_config(profile, **kwargs) for name in names]


class VerificationRunner:
    """Identity suite runner."""

    def __init__(
        self,
        suites: List[IdentitySuite],
        logger: Logger = None,
        progress: bool = True,
    ):
        """Initialize the runner."""
        self.suites = suites
        self.logger = logger or logging.getLogger(__name__)
        self.progress = progress

        # check that all the suites have different names
        if len({s.name for s in self.suites}) != len(self.suites):
            raise DomainError("Suites must have unique names")

    def run(self) -> bool:
        """Run every suite and return True if all checks passed."""
        self.logger.info(f"Running {len(self.suites)} identity suites...")
        suites = tqdm(self.suites, desc="Running suites", disable=not self.progress)
        for suite in suites:
            self.logger.debug(f"Running suite {suite.name}")
            suite.run()
            status = "passed" if suite.passed else "FAILED"
            self.logger.info(f"Suite {suite.name} {status}")
        return self.passed

    @property
    def passed(self) -> bool:
        """Return True if every suite passed."""
        return all(suite.passed for suite in self.suites)

    def failures(self) -> List[str]:
        """Return suite/check names whose residual exceeded the tolerance."""
        return [
            f"{suite_name}/{check_name}"
            for suite_name, check_name, _, _, _, passed in self
            if not passed
        ]

    def __iter__(self) -> Iterator[Tuple[str, str, float, float, int, bool]]:
        """Iterate over the results.

        Yields tuples in the format:
        (suite_name, check_name, worst_residual, tolerance, n_trials, passed)
        """
        for suite in self.suites:
            for check_name, check in suite.saved_results.items():
                yield (
                    suite.name,
                    check_name,
                    check.worst,
                    check.tolerance,
                    len(check.trials),
                    check.passed,
                )

    def __str__(self) -> str:
        """Return a table of the verification results."""
        output = []
        current_suite = ""
        for suite_name, check_name, worst, tolerance, n_trials, passed in self:
            if suite_name != current_suite:
                output.append(f"\nSuite: {suite_name}")
                current_suite = suite_name
            mark = "ok" if passed else "FAIL"
            output.append(
                f"  {check_name:<32} worst: {worst:<10.3g} tol: {tolerance:<8.1g} "
                f"trials: {n_trials:<6} {mark}"
            )
        return "\n".join(output)
