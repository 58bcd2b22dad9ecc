# src/emin_lab/experiments/base_suite.py
"""
Abstract base class for verification suites.

A suite is a named batch of invariants, each checked over many seeded random
instances. Suites never raise on a failed invariant: failures are counted into
an InvariantResult and the SuiteReport carries them back to the caller.

Adding a suite:
  1. Subclass BaseSuite in experiments/suites/.
  2. Declare `suite_id` and `description`.
  3. Implement `invariants()` returning (name, callable) pairs; each callable
     takes the master seed and returns an InvariantResult.
  4. Register the class in experiments/registry.py.
"""

import time
from abc import ABC, abstractmethod
from typing import Callable, Iterable, Optional

from emin_lab.config import SUITE_TRIALS
from emin_lab.core.models import InvariantResult, RngStream, SuiteReport
from emin_lab.utils.log import get_logger

log = get_logger(__name__)

InvariantFn = Callable[[int], InvariantResult]
ProgressFn = Callable[[str, int, int], None]

# Sample indices of different invariants never overlap.
_BLOCK = 1_000_000


class BaseSuite(ABC):
    """
    Subclasses must set class-level attributes:
        suite_id     short name used on the command line ("oracle", "routes", ...)
        description  one-line summary shown in reports
    """

    suite_id: str = ""
    description: str = ""

    def __init__(self, trials: Optional[dict[str, int]] = None):
        self.trials = dict(SUITE_TRIALS)
        if trials:
            self.trials.update(trials)

    @abstractmethod
    def invariants(self) -> Iterable[tuple[str, InvariantFn]]:
        ...

    def run(self, seed: int, progress: Optional[ProgressFn] = None) -> SuiteReport:
        """Check every invariant and collect the results in declaration order."""
        started = time.perf_counter()
        report = SuiteReport(suite_id=self.suite_id, seed=seed)
        checks = list(self.invariants())
        for done, (name, check) in enumerate(checks, start=1):
            result = check(seed)
            level = "debug" if result.passed else "warning"
            getattr(log, level)(
                "%s/%s: %d/%d failures, max deviation %.3e",
                self.suite_id, name, result.failures, result.trials, result.max_deviation,
            )
            report.results.append(result)
            if progress:
                progress(self.suite_id, done, len(checks))
        report.duration_seconds = time.perf_counter() - started
        return report

    # ------------------------------------------------------------------
    # Helpers available to all suites
    # ------------------------------------------------------------------
    @staticmethod
    def stream(seed: int, block: int, index: int) -> RngStream:
        """Stream for trial `index` of the invariant numbered `block`."""
        return RngStream(master_seed=seed, sample_index=block * _BLOCK + index)

    @staticmethod
    def tally(name: str, deviations: Iterable[float], tolerance: float, details: str = "") -> InvariantResult:
        """Count deviations above tolerance."""
        values = list(deviations)
        return InvariantResult(
            name=name,
            trials=len(values),
            failures=sum(1 for d in values if not d <= tolerance),
            max_deviation=max(values, default=0.0),
            tolerance=tolerance,
            details=details,
        )

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} id={self.suite_id!r}>"
