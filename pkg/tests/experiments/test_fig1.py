import unittest

import numpy as np
import pytest

from emin_lab.config import RunSettings
from emin_lab.core.models import ExperimentRecord, ProbabilityRow
from emin_lab.experiments.fig1 import (
    count_negative,
    g_grid,
    probability_checks,
    run_probability,
    run_scatter,
    scatter_checks,
    spread_profile,
)


def _record(n_geo: float, n_xi: float, index: int = 0) -> ExperimentRecord:
    return ExperimentRecord(
        g=1.0, sample_index=index, n_geo=n_geo, n_xi=n_xi,
        e_before=n_xi, e_after=0.0, ep_before=0.0, ep_after=0.0,
    )


class TestGrid(unittest.TestCase):
    def test_endpoints(self):
        grid = g_grid(0.05, 3.0, 12)
        self.assertEqual(len(grid), 12)
        self.assertEqual(grid[0], 0.05)
        self.assertAlmostEqual(grid[-1], 3.0)

    def test_single_point(self):
        self.assertEqual(g_grid(1.5, 0.0, 1), [1.5])

    def test_invalid(self):
        with self.assertRaises(ValueError):
            g_grid(0.0, 1.0, 0)
        with self.assertRaises(ValueError):
            g_grid(2.0, 1.0, 3)


class TestScatter(unittest.TestCase):
    def test_records_come_back_in_index_order(self):
        records = run_scatter(0.5, 12, RunSettings(seed=3, threads=4))
        self.assertEqual([r.sample_index for r in records], list(range(12)))
        self.assertTrue(all(r.g == 0.5 for r in records))

    def test_thread_count_does_not_change_results(self):
        single = run_scatter(1.0, 16, RunSettings(seed=9, threads=1))
        pooled = run_scatter(1.0, 16, RunSettings(seed=9, threads=4))
        self.assertEqual([r.as_row() for r in single], [r.as_row() for r in pooled])

    def test_same_states_across_couplings(self):
        a = run_scatter(0.0, 5, RunSettings(seed=4))
        b = run_scatter(2.0, 5, RunSettings(seed=4))
        # N_geo depends on the state only
        np.testing.assert_allclose([r.n_geo for r in a], [r.n_geo for r in b], atol=1e-15)

    def test_uncoupled_emin_is_non_negative(self):
        for ensemble in ("pure", "mixed"):
            records = run_scatter(0.0, 60, RunSettings(seed=11, ensemble=ensemble))
            checks = scatter_checks(0.0, records)
            self.assertEqual([c.name for c in checks], ["record_consistency", "noninteracting_positivity"])
            self.assertTrue(all(c.passed for c in checks), checks)

    def test_strong_coupling_shows_both_signs(self):
        records = run_scatter(2.0, 200, RunSettings(seed=21))
        checks = {c.name: c for c in scatter_checks(2.0, records)}
        self.assertTrue(checks["record_consistency"].passed)
        self.assertTrue(checks["strong_coupling_both_signs"].passed, checks["strong_coupling_both_signs"].details)

    def test_sign_check_needs_enough_samples(self):
        records = run_scatter(2.0, 10, RunSettings(seed=21))
        self.assertNotIn("strong_coupling_both_signs", [c.name for c in scatter_checks(2.0, records)])

    def test_field_truncation(self):
        records = run_scatter(0.3, 4, RunSettings(seed=2, field_dim=3))
        self.assertEqual(len(records), 4)
        self.assertTrue(all(r.consistency_defect < 1e-10 for r in records))

    def test_progress_reports_every_sample(self):
        seen = []
        run_scatter(0.1, 5, RunSettings(seed=1), progress=lambda done, total: seen.append((done, total)))
        self.assertEqual(seen, [(k, 5) for k in range(1, 6)])

    def test_rejects_empty_run(self):
        with self.assertRaises(ValueError):
            run_scatter(0.1, 0, RunSettings())


class TestProbability(unittest.TestCase):
    def test_count_negative_uses_threshold(self):
        records = [_record(0.1, -1e-3), _record(0.1, -1e-12), _record(0.1, 0.2)]
        self.assertEqual(count_negative(records), 1)

    def test_rows_match_scatter_counts(self):
        settings = RunSettings(seed=8)
        rows = run_probability([0.0, 1.0], 20, settings)
        self.assertEqual([r.g for r in rows], [0.0, 1.0])
        self.assertEqual(rows[0].n_negative, 0)
        self.assertEqual(rows[1].n_negative, count_negative(run_scatter(1.0, 20, settings)))

    def test_checks_on_a_well_behaved_sweep(self):
        probabilities = [0.0, 0.01, 0.05, 0.12, 0.2, 0.3, 0.38, 0.42, 0.44, 0.45, 0.46, 0.45]
        grid = g_grid(0.05, 3.0, 12)
        rows = [ProbabilityRow(g=g, n_samples=1000, n_negative=int(p * 1000)) for g, p in zip(grid, probabilities)]
        checks = probability_checks(rows)
        self.assertEqual([c.name for c in checks], ["weak_coupling_probability", "saturation", "increasing_trend"])
        self.assertTrue(all(c.passed for c in checks))

    def test_checks_flag_bad_sweeps(self):
        rows = [
            ProbabilityRow(g=0.05, n_samples=100, n_negative=10),
            ProbabilityRow(g=1.0, n_samples=100, n_negative=5),
            ProbabilityRow(g=3.0, n_samples=100, n_negative=90),
        ]
        checks = {c.name: c for c in probability_checks(rows)}
        self.assertFalse(checks["weak_coupling_probability"].passed)
        self.assertFalse(checks["saturation"].passed)

    def test_trend_holds_when_the_plateau_starts_early(self):
        counts = [8, 400, 660, 940, 1000, 980, 1020, 1000, 960, 1000, 980, 1000]
        grid = g_grid(0.05, 3.0, 12)
        rows = [ProbabilityRow(g=g, n_samples=2000, n_negative=n) for g, n in zip(grid, counts)]
        checks = {c.name: c for c in probability_checks(rows)}
        self.assertEqual(checks["increasing_trend"].trials, 12)
        self.assertTrue(all(c.passed for c in checks.values()), [(c.name, c.details) for c in checks.values()])

    def test_falling_sweep_has_no_trend(self):
        grid = g_grid(0.05, 3.0, 6)
        rows = [ProbabilityRow(g=g, n_samples=100, n_negative=n) for g, n in zip(grid, [0, 50, 40, 30, 20, 45])]
        checks = {c.name: c for c in probability_checks(rows)}
        self.assertFalse(checks["increasing_trend"].passed)

    def test_defaults_use_pure_states_on_a_three_level_field(self):
        settings = RunSettings()
        self.assertEqual(settings.ensemble, "pure")
        self.assertEqual(settings.field_dim, 3)

    def test_strong_coupling_is_near_even_odds(self):
        records = run_scatter(3.0, 400, RunSettings(seed=20250101, threads=4))
        self.assertTrue(0.35 <= count_negative(records) / 400 <= 0.65)

    @pytest.mark.slow
    def test_sweep_reproduces_the_negativity_curve(self):
        rows = run_probability(g_grid(0.05, 3.0, 12), 2000, RunSettings(seed=20250101, threads=4))
        checks = probability_checks(rows)
        self.assertTrue(all(c.passed for c in checks), [(c.name, c.details) for c in checks])

    @pytest.mark.slow
    def test_weak_coupling_at_scale(self):
        records = run_scatter(0.05, 10_000, RunSettings(seed=20250101, threads=4))
        checks = scatter_checks(0.05, records)
        self.assertTrue(all(c.passed for c in checks), [(c.name, c.details) for c in checks])


class TestSpreadProfile(unittest.TestCase):
    def test_bins_cover_all_records(self):
        records = [_record(g, x, k) for k, (g, x) in enumerate([(0.0, 0.1), (0.05, -0.2), (0.5, 0.3), (1.0, 0.0)])]
        bins = spread_profile(records, n_bins=2)
        self.assertEqual(sum(b.count for b in bins), 4)
        self.assertEqual(bins[0].count, 2)
        self.assertAlmostEqual(bins[0].n_xi_min, -0.2)
        self.assertAlmostEqual(bins[0].n_xi_max, 0.1)
        self.assertEqual(bins[1].n_geo_hi, 1.0)

    def test_empty_bins_are_omitted(self):
        records = [_record(0.0, 0.1), _record(1.0, 0.2)]
        self.assertEqual(len(spread_profile(records, n_bins=5)), 2)

    def test_no_records(self):
        self.assertEqual(spread_profile([]), [])


if __name__ == "__main__":
    unittest.main()
