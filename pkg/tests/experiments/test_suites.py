import unittest

import numpy as np

from emin_lab.config import SUITE_TRIALS
from emin_lab.experiments.base_suite import BaseSuite
from emin_lab.experiments.registry import SUITES, get_suite, list_suites, run_suites
from emin_lab.experiments.suites.oracle import OracleSuite, brute_force_passive_energy
from emin_lab.experiments.suites.theorems import TheoremsSuite

SMALL_TRIALS = {key: 6 for key in SUITE_TRIALS}


class TestRegistry(unittest.TestCase):
    def test_list_includes_all(self):
        self.assertEqual(list_suites(), ["oracle", "routes", "theorems", "all"])

    def test_lookup_is_case_insensitive(self):
        self.assertIs(get_suite("ORACLE"), OracleSuite)

    def test_unknown_suite(self):
        with self.assertRaises(ValueError):
            get_suite("nope")

    def test_every_suite_is_a_base_suite(self):
        for suite_id, cls in SUITES.items():
            self.assertTrue(issubclass(cls, BaseSuite))
            self.assertEqual(cls.suite_id, suite_id)
            self.assertTrue(cls.description)


class TestTally(unittest.TestCase):
    def test_counts_deviations_above_tolerance(self):
        result = BaseSuite.tally("x", [0.0, 1e-3, 1e-12], 1e-10)
        self.assertEqual(result.trials, 3)
        self.assertEqual(result.failures, 1)
        self.assertEqual(result.max_deviation, 1e-3)

    def test_nan_is_a_failure(self):
        self.assertEqual(BaseSuite.tally("x", [float("nan")], 1.0).failures, 1)

    def test_streams_of_different_blocks_do_not_overlap(self):
        self.assertNotEqual(BaseSuite.stream(1, 0, 5), BaseSuite.stream(1, 1, 5))


class TestBruteForce(unittest.TestCase):
    def test_two_level(self):
        rho = np.diag([0.3, 0.7])
        h = np.diag([0.0, 1.0])
        self.assertAlmostEqual(brute_force_passive_energy(rho, h), 0.3)


class TestSuitesPass(unittest.TestCase):
    def test_all_suites_pass_on_small_batches(self):
        reports = run_suites("all", seed=123, trials=SMALL_TRIALS)
        self.assertEqual([r.suite_id for r in reports], ["oracle", "routes", "theorems"])
        for report in reports:
            failed = [(r.name, r.max_deviation) for r in report.results if not r.passed]
            self.assertTrue(report.passed, f"{report.suite_id}: {failed}")
            self.assertIsNotNone(report.duration_seconds)

    def test_progress_callback(self):
        calls = []
        report = OracleSuite(trials=SMALL_TRIALS).run(7, progress=lambda *args: calls.append(args))
        self.assertEqual(calls, [("oracle", 1, 3), ("oracle", 2, 3), ("oracle", 3, 3)])
        self.assertEqual(len(report.results), 3)

    def test_trial_overrides_merge_with_defaults(self):
        suite = TheoremsSuite(trials={"gibbs": 2})
        self.assertEqual(suite.trials["gibbs"], 2)
        self.assertEqual(suite.trials["routes"], SUITE_TRIALS["routes"])

    def test_bounds_audit_never_fails(self):
        report = TheoremsSuite(trials=SMALL_TRIALS).run(5)
        audit = next(r for r in report.results if r.name == "bounds_audit")
        self.assertTrue(audit.passed)
        self.assertIn("/6", audit.details)


if __name__ == "__main__":
    unittest.main()
