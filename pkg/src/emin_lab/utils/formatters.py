# src/emin_lab/utils/formatters.py
"""Plain-text and JSON renderings of reports. Rich tables live in the CLI."""

import json
from dataclasses import fields, is_dataclass
from enum import Enum
from importlib.metadata import PackageNotFoundError, version
from typing import Any, Sequence

import numpy as np

from emin_lab.core.models import SuiteReport
from emin_lab.experiments.observation import Obs1Report
from emin_lab.experiments.oneshot import EminEvaluation, ErgotropyEvaluation
from emin_lab.utils.serialization import matrix_to_dict


def resolve_app_version() -> str:
    try:
        return version("emin-lab")
    except PackageNotFoundError:
        return "0.3.0"


def to_jsonable(obj: Any) -> Any:
    """Dataclasses (with their properties' inputs), enums, numpy values, complex matrices."""
    if isinstance(obj, Enum):
        return obj.value
    if is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2 and np.iscomplexobj(obj):
            return matrix_to_dict(obj)
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def _dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def verify_payload(reports: Sequence[SuiteReport]) -> dict:
    return {
        "version": resolve_app_version(),
        "passed": all(r.passed for r in reports),
        "suites": [
            {
                "suite_id": r.suite_id,
                "seed": r.seed,
                "passed": r.passed,
                "total_failures": r.total_failures,
                "duration_seconds": r.duration_seconds,
                "results": [
                    {**to_jsonable(res), "passed": res.passed} for res in r.results
                ],
            }
            for r in reports
        ],
    }


def format_verify_json(reports: Sequence[SuiteReport]) -> str:
    return _dumps(verify_payload(reports))


def format_verify_text(reports: Sequence[SuiteReport]) -> str:
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"[{status}] {r.suite_id} (seed {r.seed})")
        for res in r.results:
            mark = "ok  " if res.passed else "FAIL"
            lines.append(
                f"  {mark} {res.name}: {res.failures}/{res.trials} failures, "
                f"max deviation {res.max_deviation:.3e} (tol {res.tolerance:.1e})"
            )
            if res.details:
                lines.append(f"       {res.details}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# ergotropy / emin
# ---------------------------------------------------------------------------

def format_ergotropy_json(evaluation: ErgotropyEvaluation) -> str:
    return _dumps(to_jsonable(evaluation))


def format_ergotropy_text(evaluation: ErgotropyEvaluation) -> str:
    r = evaluation.report
    lines = [
        f"Energy          E   = {r.energy:.12g}",
        f"Passive energy  E_p = {r.passive_energy:.12g}",
        f"Ergotropy       xi  = {r.ergotropy:.12g}",
    ]
    if evaluation.structure is not None:
        lines.append(f"Structure           {evaluation.structure.value}")
    if evaluation.ergotropic_gap is not None:
        lines.append(f"Ergotropic gap      {evaluation.ergotropic_gap:.12g}")
    return "\n".join(lines)


def emin_payload(evaluation: EminEvaluation) -> dict:
    payload = to_jsonable(evaluation)
    payload["route_spread"] = evaluation.route_spread
    if evaluation.breakdown is not None:
        b = evaluation.breakdown
        payload["breakdown"].update(
            energy_change=b.energy_change, passive_change=b.passive_change, emin=b.emin,
        )
    if evaluation.bounds is not None:
        bounds = evaluation.bounds
        payload["bounds"].update(
            scaled_emin=bounds.scaled_emin,
            lower_holds=bounds.lower_holds,
            upper_holds=bounds.upper_holds,
            upper_as_ceiling_holds=bounds.upper_as_ceiling_holds,
        )
    return payload


def format_emin_json(evaluation: EminEvaluation) -> str:
    return _dumps(emin_payload(evaluation))


def format_emin_text(evaluation: EminEvaluation) -> str:
    lines = [
        f"Dims {evaluation.dim_a} x {evaluation.dim_b}, {evaluation.structure.value} H, "
        f"measured in the {evaluation.basis_source}",
    ]
    if evaluation.degenerate_marginal:
        lines.append("  warning: degenerate marginal, measurement basis is not unique")
    for name, value in evaluation.routes.items():
        lines.append(f"  N_xi [{name}] = {value:.12g}")
    b = evaluation.breakdown
    if b is not None:
        lines += [
            f"  energy change    E(rho) - E(Pi rho)     = {b.energy_change:.12g}",
            f"  passive change   E_p(Pi rho) - E_p(rho) = {b.passive_change:.12g}",
            f"  N_geo = {b.n_geo:.12g}, role: {b.role.value}",
        ]
    bounds = evaluation.bounds
    if bounds is not None:
        lines.append(
            f"  beta = {bounds.beta:g}: lower {bounds.lower:.6g}, beta*N_xi {bounds.scaled_emin:.6g}, "
            f"upper {bounds.upper:.6g}"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# example-obs1
# ---------------------------------------------------------------------------

def format_obs1_json(report: Obs1Report) -> str:
    payload = to_jsonable(report)
    payload["passed"] = report.passed
    return _dumps(payload)


def format_obs1_text(report: Obs1Report) -> str:
    lines = [f"alpha = {report.alpha:g}, H = sigma_x (x) sigma_z"]
    for c in report.checks:
        mark = "ok  " if c.passed else "FAIL"
        lines.append(f"  {mark} {c.name}: {c.details}")
    lines.append(f"  role: {report.role.value}")
    return "\n".join(lines)
