"""Line figures from sagin-sim sweep CSVs.

Reads the harness CSV schema (one row per trial plus seed="mean" summary
rows) and renders one of five figures: energy efficiency against excess
users, LEO transmit power, or LEO altitude, capacity against excess users,
and Jain fairness against excess users. One line per scheme, summary rows
preferred over raw trials, bps converted to Mbps by dividing by 1e6.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from statistics import fmean

import matplotlib
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure as MplFigure

from . import style

# must match the simulator's write_csv schema exactly
CSV_HEADER = ("axis", "axis_value", "scheme", "seed", "capacity_bps", "power_w",
              "ee_bps_per_w", "fairness", "served", "dropped")

MBPS = 1e6


class Figure(Enum):
    FIG5_EE = "fig5"
    FIG6_EE_POWER = "fig6"
    FIG7_EE_ALTITUDE = "fig7"
    FIG8_CAPACITY = "fig8"
    FIG9_FAIRNESS = "fig9"


@dataclass(frozen=True)
class _FigDef:
    metric: str
    scale: float  # plotted value = metric / scale
    xlabel: str
    ylabel: str
    title: str


_FIGURES = {
    Figure.FIG5_EE: _FigDef("ee_bps_per_w", MBPS, "Excess users",
                            "Energy efficiency (Mbps/W)",
                            "Energy efficiency vs excess users"),
    Figure.FIG6_EE_POWER: _FigDef("ee_bps_per_w", MBPS, "LEO transmit power (dBm)",
                                  "Energy efficiency (Mbps/W)",
                                  "Energy efficiency vs LEO transmit power"),
    Figure.FIG7_EE_ALTITUDE: _FigDef("ee_bps_per_w", MBPS, "LEO altitude (km)",
                                     "Energy efficiency (Mbps/W)",
                                     "Energy efficiency vs LEO altitude"),
    Figure.FIG8_CAPACITY: _FigDef("capacity_bps", MBPS, "Excess users",
                                  "Capacity (Mbps)",
                                  "Network capacity vs excess users"),
    Figure.FIG9_FAIRNESS: _FigDef("fairness", 1.0, "Excess users",
                                  "Jain fairness index",
                                  "Fairness vs excess users"),
}


@dataclass(frozen=True)
class Row:
    axis: str
    axis_value: float
    scheme: str
    seed: str  # trial seed as text, or "mean" for a summary row
    capacity_bps: float
    power_w: float
    ee_bps_per_w: float
    fairness: float
    served: float  # float, not int: summary rows carry means
    dropped: float


@dataclass(frozen=True)
class FigureSpec:
    input_csv: Path
    figure: Figure
    output_path: Path

    def normalized(self) -> "FigureSpec":
        """Coerce paths and the figure token, and check the input exists."""
        fig = self.figure if isinstance(self.figure, Figure) else Figure(self.figure)
        src = Path(self.input_csv)
        if not src.is_file():
            raise FileNotFoundError(f"input CSV not found: {src}")
        return FigureSpec(src, fig, Path(self.output_path))


def read_csv_rows(path) -> list[Row]:
    """Parse a sweep CSV, raising ValueError naming the offending line."""
    path = Path(path)
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for lineno, rec in enumerate(reader, start=1):
            if lineno == 1:
                if tuple(rec) != CSV_HEADER:
                    raise ValueError(
                        f"{path}: line 1: expected header {','.join(CSV_HEADER)}")
                continue
            if len(rec) != len(CSV_HEADER):
                raise ValueError(
                    f"{path}: line {lineno}: expected {len(CSV_HEADER)} fields, "
                    f"got {len(rec)}")
            try:
                if rec[3] != "mean":
                    int(rec[3])  # trial rows carry an integer seed
                rows.append(Row(
                    axis=rec[0],
                    axis_value=float(rec[1]),
                    scheme=rec[2],
                    seed=rec[3],
                    capacity_bps=float(rec[4]),
                    power_w=float(rec[5]),
                    ee_bps_per_w=float(rec[6]),
                    fairness=float(rec[7]),
                    served=float(rec[8]),
                    dropped=float(rec[9]),
                ))
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from None
    return rows


def _series(rows: list[Row], metric: str) -> dict[str, list[tuple[float, float]]]:
    """Per-scheme sorted (x, y) points.

    Summary rows (seed == "mean") are used when present; otherwise trial rows
    are averaged per (scheme, axis_value). The harness writes exactly one
    summary row per point, so fmean over that group is the identity.
    """
    summary = [r for r in rows if r.seed == "mean"]
    pool = summary if summary else rows
    grouped: dict[str, dict[float, list[float]]] = {}
    for r in pool:
        grouped.setdefault(r.scheme, {}).setdefault(r.axis_value, []).append(
            getattr(r, metric))
    return {s: sorted((x, fmean(ys)) for x, ys in by_x.items())
            for s, by_x in grouped.items()}


def _scheme_draw_order(present) -> list[str]:
    known = [s for s in style.SCHEME_ORDER if s in present]
    extras = sorted(set(present) - set(style.SCHEME_ORDER))
    return known + extras


def build_figure(rows: list[Row], figure: Figure):
    """Build (fig, ax) for one figure enum from parsed rows.

    Raises ValueError when there is nothing to plot; warns (and continues)
    when one of the four known scheme series is absent.
    """
    figure = figure if isinstance(figure, Figure) else Figure(figure)
    fd = _FIGURES[figure]
    if not rows:
        raise ValueError("empty plot: CSV has no data rows")
    series = _series(rows, fd.metric)
    for name in style.SCHEME_ORDER:
        if name not in series:
            warnings.warn(f"scheme series '{name}' missing from CSV; "
                          "plotting the remaining schemes", stacklevel=2)

    with matplotlib.rc_context(style.RC):
        fig = MplFigure()
        FigureCanvasAgg(fig)
        ax = fig.add_subplot(111)
        extra_i = 0
        for name in _scheme_draw_order(series):
            xs = [x for x, _ in series[name]]
            ys = [y / fd.scale for _, y in series[name]]
            if name in style.SCHEME_STYLE:
                label, color, marker = style.SCHEME_STYLE[name]
            else:
                color, marker = style.EXTRA_STYLE[extra_i % len(style.EXTRA_STYLE)]
                label = name
                extra_i += 1
            ax.plot(xs, ys, color=color, marker=marker, label=label)
        ax.set_xlabel(fd.xlabel)
        ax.set_ylabel(fd.ylabel)
        ax.set_title(fd.title)
        ax.legend()
        fig.tight_layout()
    return fig, ax


def render(spec: FigureSpec) -> Path:
    """Render spec.figure from spec.input_csv to spec.output_path."""
    spec = spec.normalized()
    rows = read_csv_rows(spec.input_csv)
    fig, _ = build_figure(rows, spec.figure)
    # pin the PNG Software chunk so re-renders are byte-identical across
    # matplotlib versions; other formats keep their backend defaults
    meta = {"Software": "sagin-plots"} if spec.output_path.suffix == ".png" else None
    # dpi pinned here too: savefig runs outside the rc context, and letting
    # it fall back to the host's rcParams would change the raster size
    fig.savefig(spec.output_path, dpi=style.RC["savefig.dpi"], metadata=meta)
    return spec.output_path
