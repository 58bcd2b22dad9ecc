# src/emin_lab/experiments/registry.py
"""
Registry for verification suites.
The CLI uses this to discover available suites without hardcoding them.
"""

from typing import Optional, Type

from emin_lab.core.models import SuiteReport
from emin_lab.experiments.base_suite import BaseSuite, ProgressFn
from emin_lab.experiments.suites.oracle import OracleSuite
from emin_lab.experiments.suites.routes import RoutesSuite
from emin_lab.experiments.suites.theorems import TheoremsSuite

ALL_SUITES = "all"

# Map of suite_id (str) -> Suite class
SUITES: dict[str, Type[BaseSuite]] = {
    OracleSuite.suite_id: OracleSuite,
    RoutesSuite.suite_id: RoutesSuite,
    TheoremsSuite.suite_id: TheoremsSuite,
}


def get_suite(suite_id: str) -> Type[BaseSuite]:
    """Returns the suite class for the given ID."""
    suite_cls = SUITES.get(suite_id.lower())
    if not suite_cls:
        raise ValueError(f"Unknown suite: {suite_id}. Available: {list(SUITES.keys())}")
    return suite_cls


def list_suites() -> list[str]:
    """Returns the registered suite IDs, plus 'all'."""
    return list(SUITES.keys()) + [ALL_SUITES]


def run_suites(
    suite_id: str,
    seed: int,
    trials: Optional[dict[str, int]] = None,
    progress: Optional[ProgressFn] = None,
) -> list[SuiteReport]:
    """Run one suite, or every registered suite for 'all'."""
    ids = list(SUITES) if suite_id.lower() == ALL_SUITES else [suite_id]
    return [get_suite(i)(trials=trials).run(seed, progress=progress) for i in ids]
