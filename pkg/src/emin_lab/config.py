# src/emin_lab/config.py
"""
Central configuration for emin-lab.
All environment variables, tolerances, and experiment defaults live here.

Precedence for a run: CLI flags > config file (--config) > environment > defaults.
The config file uses dotenv syntax with the same keys as the environment variables.
"""

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Optional

from dotenv import dotenv_values, load_dotenv

load_dotenv()


# ---------------------------------------------------------------------------
# Numerical tolerances
# ---------------------------------------------------------------------------
HERMITIAN_TOL: float = float(os.getenv("EMIN_LAB_HERMITIAN_TOL", "1e-10"))
TRACE_TOL: float = 1e-10
PSD_CLAMP_TOL: float = 1e-10
NORMALIZATION_TOL: float = 1e-10
DEGENERACY_TOL: float = float(os.getenv("EMIN_LAB_DEGENERACY_TOL", "1e-9"))
ROUTE_TOL: float = float(os.getenv("EMIN_LAB_ROUTE_TOL", "1e-8"))
SCHMIDT_CUTOFF: float = 1e-12

# Entropies: eigenvalues below this contribute nothing to S.
ENTROPY_ZERO_CUTOFF: float = 1e-14
# Relative entropy: weight of `a` in the kernel of `b` above this is infinite D.
SUPPORT_TOL: float = 1e-12

# ---------------------------------------------------------------------------
# Experiment defaults
# ---------------------------------------------------------------------------
DEFAULT_SEED: int = int(os.getenv("EMIN_LAB_SEED", "20250101"))
DEFAULT_BETA: float = float(os.getenv("EMIN_LAB_BETA", "1.0"))
DEFAULT_FIELD_DIM: int = int(os.getenv("EMIN_LAB_FIELD_DIM", "3"))
DEFAULT_ENSEMBLE: str = os.getenv("EMIN_LAB_ENSEMBLE", "pure")
DEFAULT_THREADS: int = int(os.getenv("EMIN_LAB_THREADS", "1"))
NEGATIVITY_THRESHOLD: float = float(os.getenv("EMIN_LAB_NEGATIVITY_THRESHOLD", "-1e-10"))
LOG_LEVEL: str = os.getenv("EMIN_LAB_LOG_LEVEL", "WARNING")

# ---------------------------------------------------------------------------
# Scatter and probability sweep acceptance thresholds
# ---------------------------------------------------------------------------
WEAK_COUPLING_G: float = 0.05
WEAK_COUPLING_MIN_EMIN: float = -0.02
WEAK_COUPLING_MAX_NEG_FRACTION: float = 0.02
NONINTERACTING_MIN_EMIN: float = -1e-8
SATURATION_BAND: tuple[float, float] = (0.40, 0.55)
TREND_SIGNIFICANCE: float = 0.05

# ---------------------------------------------------------------------------
# Verification suite sizes (per invariant)
# ---------------------------------------------------------------------------
SUITE_TRIALS: dict[str, int] = {
    "oracle": 200,
    "routes": 500,
    "positivity": 1000,
    "invariance": 200,
    "majorization": 500,
    "gibbs": 100,
    "bounds": 200,
    "shift": 200,
    "maxent": 100,
}

# ---------------------------------------------------------------------------
# Output conventions
# ---------------------------------------------------------------------------
CSV_COLUMNS: list[str] = [
    "g",
    "sample_index",
    "n_geo",
    "n_xi",
    "e_before",
    "e_after",
    "ep_before",
    "ep_after",
]
PROB_COLUMNS: list[str] = ["g", "n_samples", "n_negative", "probability"]
SPREAD_COLUMNS: list[str] = ["n_geo_lo", "n_geo_hi", "count", "n_xi_min", "n_xi_max", "n_xi_mean"]
SPREAD_BINS: int = 10
CSV_FLOAT_FORMAT: str = ".17g"
MANIFEST_FILENAME: str = "manifest.json"


@dataclass(frozen=True)
class RunSettings:
    """Resolved knobs for one CLI run."""
    seed: int = DEFAULT_SEED
    beta: float = DEFAULT_BETA
    field_dim: int = DEFAULT_FIELD_DIM
    ensemble: str = DEFAULT_ENSEMBLE
    threads: int = DEFAULT_THREADS
    degeneracy_tol: float = DEGENERACY_TOL


# Config-file key -> RunSettings field
_CONFIG_KEYS: dict[str, str] = {
    "EMIN_LAB_SEED": "seed",
    "EMIN_LAB_BETA": "beta",
    "EMIN_LAB_FIELD_DIM": "field_dim",
    "EMIN_LAB_ENSEMBLE": "ensemble",
    "EMIN_LAB_THREADS": "threads",
    "EMIN_LAB_DEGENERACY_TOL": "degeneracy_tol",
}


def _coerce(field_name: str, raw: Any) -> Any:
    kinds = {f.name: f.type for f in fields(RunSettings)}
    kind = kinds[field_name]
    if kind in (int, "int"):
        return int(raw)
    if kind in (float, "float"):
        return float(raw)
    return str(raw)


def load_config_file(path: str | Path) -> dict[str, Any]:
    """
    Read a dotenv-style key/value file into RunSettings field overrides.

    Raises:
        ValueError: on unknown keys or values that cannot be coerced.
    """
    values = dotenv_values(path)
    overrides: dict[str, Any] = {}
    for key, raw in values.items():
        if key not in _CONFIG_KEYS:
            raise ValueError(
                f"Unknown config key '{key}' in {path}. Allowed: {sorted(_CONFIG_KEYS)}"
            )
        if raw is None:
            continue
        name = _CONFIG_KEYS[key]
        try:
            overrides[name] = _coerce(name, raw)
        except ValueError as e:
            raise ValueError(f"Bad value for {key} in {path}: {raw!r}") from e
    return overrides


def resolve_settings(
    config_file: Optional[str | Path] = None,
    **cli_overrides: Any,
) -> RunSettings:
    """
    Build RunSettings with precedence CLI > config file > environment > defaults.
    CLI overrides that are None are treated as "not given".
    """
    settings = RunSettings()
    if config_file:
        settings = replace(settings, **load_config_file(config_file))
    given = {k: v for k, v in cli_overrides.items() if v is not None}
    if given:
        settings = replace(settings, **given)
    return settings
