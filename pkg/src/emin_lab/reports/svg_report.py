# src/emin_lab/reports/svg_report.py
"""
SVG plots of experiment output.

Plots are a view of the CSV data: data points are mapped to pixel coordinates
here and the jinja2 templates only lay them out.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
from jinja2 import Environment, FileSystemLoader

from emin_lab.core.models import ExperimentRecord, ProbabilityRow

TEMPLATES_DIR = Path(__file__).parent / "templates"

WIDTH = 640
HEIGHT = 420
MARGIN = {"left": 70, "right": 20, "top": 40, "bottom": 55}
N_TICKS = 5


@dataclass(frozen=True)
class Axis:
    lo: float
    hi: float
    pixel_lo: float
    pixel_hi: float

    def __call__(self, value: float) -> float:
        span = self.hi - self.lo
        frac = 0.5 if span == 0 else (value - self.lo) / span
        return round(self.pixel_lo + frac * (self.pixel_hi - self.pixel_lo), 2)

    def ticks(self, n: int = N_TICKS) -> list[dict]:
        return [{"label": f"{v:.3g}", "pos": self(v)} for v in np.linspace(self.lo, self.hi, n)]


def _padded(values: np.ndarray) -> tuple[float, float]:
    lo, hi = float(values.min()), float(values.max())
    pad = 0.05 * (hi - lo) if hi > lo else 0.5
    return lo - pad, hi + pad


def _axes(xs: np.ndarray, ys: np.ndarray, y_range=None) -> tuple[Axis, Axis]:
    x_lo, x_hi = _padded(xs)
    y_lo, y_hi = y_range if y_range else _padded(ys)
    x_axis = Axis(x_lo, x_hi, MARGIN["left"], WIDTH - MARGIN["right"])
    # SVG y grows downward
    y_axis = Axis(y_lo, y_hi, HEIGHT - MARGIN["bottom"], MARGIN["top"])
    return x_axis, y_axis


def _environment() -> Environment:
    return Environment(loader=FileSystemLoader(str(TEMPLATES_DIR)), autoescape=True)


def _frame(x_axis: Axis, y_axis: Axis) -> dict:
    return {
        "width": WIDTH,
        "height": HEIGHT,
        "margin": MARGIN,
        "x_ticks": x_axis.ticks(),
        "y_ticks": y_axis.ticks(),
    }


def render_scatter_svg(records: Sequence[ExperimentRecord], title: str) -> str:
    """N_xi against N_geo, negative values highlighted, with the N_xi = 0 line."""
    if not records:
        raise ValueError("Cannot plot an empty record set")
    xs = np.array([r.n_geo for r in records])
    ys = np.array([r.n_xi for r in records])
    x_axis, y_axis = _axes(xs, ys)
    points = [
        {"x": x_axis(x), "y": y_axis(y), "negative": bool(y < 0)}
        for x, y in zip(xs, ys)
    ]
    zero = y_axis(0.0) if y_axis.lo <= 0.0 <= y_axis.hi else None
    return _environment().get_template("scatter.svg.j2").render(
        **_frame(x_axis, y_axis),
        title=title,
        x_label="N(rho)  [HS norm]",
        y_label="N_xi",
        points=points,
        zero_line=zero,
    )


def render_probability_svg(rows: Sequence[ProbabilityRow], title: str) -> str:
    """P[N_xi < 0] against g on a fixed [0, 1] axis."""
    if not rows:
        raise ValueError("Cannot plot an empty sweep")
    xs = np.array([r.g for r in rows])
    ys = np.array([r.probability for r in rows])
    x_axis, y_axis = _axes(xs, ys, y_range=(0.0, 1.0))
    points = [{"x": x_axis(x), "y": y_axis(y)} for x, y in zip(xs, ys)]
    return _environment().get_template("line.svg.j2").render(
        **_frame(x_axis, y_axis),
        title=title,
        x_label="g",
        y_label="P[N_xi < 0]",
        points=points,
        path=" ".join(f"{p['x']},{p['y']}" for p in points),
    )


def write_svg(path: str | Path, content: str) -> Path:
    path = Path(path)
    path.write_text(content, encoding="utf-8")
    return path
