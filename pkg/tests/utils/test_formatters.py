import json
import unittest
from unittest.mock import patch

import numpy as np

from emin_lab.core.models import EminRole, InvariantResult, Structure, SuiteReport
from emin_lab.experiments.observation import example_obs1
from emin_lab.experiments.oneshot import evaluate_emin, evaluate_ergotropy
from emin_lab.utils import formatters


def _reports(failures: int = 0) -> list[SuiteReport]:
    return [
        SuiteReport(
            suite_id="oracle",
            seed=5,
            results=[
                InvariantResult(name="passive_energy_oracle", trials=10, failures=failures,
                                max_deviation=np.float64(2e-13), tolerance=1e-12, details="dims"),
            ],
            duration_seconds=0.5,
        )
    ]


class TestToJsonable(unittest.TestCase):
    def test_numpy_and_enum_values(self):
        payload = formatters.to_jsonable({"a": np.float64(1.5), "role": EminRole.LOCKED, "v": np.arange(2)})
        self.assertEqual(payload, {"a": 1.5, "role": "locked", "v": [0, 1]})
        json.dumps(payload)

    def test_complex_matrix(self):
        payload = formatters.to_jsonable(np.eye(2, dtype=complex))
        self.assertEqual(payload["rows"], 2)


class TestVerifyFormatters(unittest.TestCase):
    @patch("emin_lab.utils.formatters.resolve_app_version", return_value="9.9.9")
    def test_json_payload(self, _mock_version):
        payload = json.loads(formatters.format_verify_json(_reports()))
        self.assertEqual(payload["version"], "9.9.9")
        self.assertTrue(payload["passed"])
        result = payload["suites"][0]["results"][0]
        self.assertEqual(result["name"], "passive_energy_oracle")
        self.assertTrue(result["passed"])

    def test_text_marks_failures(self):
        text = formatters.format_verify_text(_reports(failures=2))
        self.assertIn("[FAIL] oracle (seed 5)", text)
        self.assertIn("2/10 failures", text)


class TestOneShotFormatters(unittest.TestCase):
    def setUp(self):
        psi = np.array([0.8, 0, 0, 0.6], dtype=complex)
        self.rho = np.outer(psi, psi.conj())
        self.h = np.diag([2.0, 0.0, 0.0, -2.0])

    def test_emin_json_carries_derived_values(self):
        payload = json.loads(formatters.format_emin_json(evaluate_emin(self.rho, self.h, (2, 2))))
        self.assertEqual(payload["structure"], Structure.NON_INTERACTING.value)
        self.assertIn("route_spread", payload)
        self.assertIn("energy_change", payload["breakdown"])
        self.assertIn("lower_holds", payload["bounds"])

    def test_emin_text_lists_routes(self):
        text = formatters.format_emin_text(evaluate_emin(self.rho, self.h, (2, 2)))
        self.assertIn("N_xi [direct]", text)
        self.assertIn("N_xi [pure_closed]", text)

    def test_ergotropy_outputs(self):
        evaluation = evaluate_ergotropy(self.rho, self.h, dims=(2, 2))
        payload = json.loads(formatters.format_ergotropy_json(evaluation))
        self.assertAlmostEqual(payload["report"]["ergotropy"], evaluation.report.ergotropy)
        self.assertIn("Ergotropic gap", formatters.format_ergotropy_text(evaluation))

    def test_obs1_outputs(self):
        report = example_obs1(0.6)
        payload = json.loads(formatters.format_obs1_json(report))
        self.assertTrue(payload["passed"])
        self.assertEqual(payload["role"], "locked")
        self.assertIn("ok   N_geo", formatters.format_obs1_text(report))


if __name__ == "__main__":
    unittest.main()
