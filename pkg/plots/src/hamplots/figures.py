"""CSV-driven figure construction.

Everything here is a pure function of the parsed rows: the same input
bytes produce the same plotted data series.  Figures are built through
the object API so no pyplot state or GUI backend is involved.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from matplotlib import rcParams
from matplotlib.figure import Figure
from matplotlib.lines import Line2D

KINDS = ("convergence", "timings")

RASTER_FORMAT = "png"
VECTOR_FORMATS = ("svg", "pdf")

# Columns each kind reads.  r is the basis parameter on the x axis; the
# y column differs per kind.  Extra columns in the file are ignored.
_REQUIRED = {
    "convergence": ("problem", "method", "function", "r", "rel_error"),
    "timings": ("problem", "method", "r", "wall_time_ns"),
}
_VALUE_COLUMN = {"convergence": "rel_error", "timings": "wall_time_ns"}

_PANEL_COLS = 3


class CsvFormatError(ValueError):
    """An input CSV does not match the expected schema."""


@dataclass
class FigureSpec:
    """What to render and where to put it.

    Parameters
    ----------
    input_csv : path
        CSV file written by the experiment harness.
    kind : str
        "convergence" for error-vs-dimension figures, "timings" for the
        build-time figure.  The kind decides which columns are required.
    output : path
        Directory the image files are written into.
    problems : sequence of str, optional
        Restrict panels to these problem ids.  Default: all in the file.
    methods : sequence of str, optional
        Restrict curves to these method tags.  Default: all in the file.
    image_format : str
        "png" (default), "svg", or "pdf".
    """

    input_csv: Path
    kind: str
    output: Path
    problems: tuple = None
    methods: tuple = None
    image_format: str = RASTER_FORMAT

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(
                f"unknown kind {self.kind!r}, expected one of {KINDS}"
            )
        allowed = (RASTER_FORMAT,) + VECTOR_FORMATS
        if self.image_format not in allowed:
            raise ValueError(
                f"unknown image format {self.image_format!r},"
                f" expected one of {allowed}"
            )
        self.input_csv = Path(self.input_csv)
        self.output = Path(self.output)


def load_rows(path, kind):
    """Read and validate a harness CSV.

    Returns a list of dicts with ``r`` parsed as int and the kind's
    value column as float.  Any schema violation raises
    :class:`CsvFormatError` naming the offending row.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}, expected one of {KINDS}")
    required = _REQUIRED[kind]
    value_column = _VALUE_COLUMN[kind]
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or ()
        missing = [c for c in required if c not in header]
        if missing:
            raise CsvFormatError(
                f"{path}: row 1: missing columns {', '.join(missing)}"
            )
        for raw in reader:
            line = reader.line_num
            try:
                row = {c: raw[c] for c in required}
                if any(v is None for v in row.values()):
                    raise ValueError("truncated row")
                row["r"] = int(row["r"])
                row[value_column] = float(row[value_column])
            except (TypeError, ValueError) as exc:
                raise CsvFormatError(f"{path}: row {line}: {exc}") from exc
            rows.append(row)
    return rows


def _ordered_unique(values):
    seen = {}
    for v in values:
        seen.setdefault(v, None)
    return tuple(seen)


def _apply_filter(available, requested, what):
    # Subset filters keep the file's own ordering; an empty selection is
    # reported with the tags that would have worked.
    if requested is None:
        return available
    requested = set(requested)
    kept = tuple(v for v in available if v in requested)
    if not kept:
        raise ValueError(
            f"no {what} selected, available: {', '.join(available)}"
        )
    return kept


def _panel_grid(fig, n):
    ncols = min(_PANEL_COLS, n)
    nrows = math.ceil(n / ncols)
    axes = fig.subplots(nrows, ncols, squeeze=False).ravel()
    for ax in axes[n:]:
        fig.delaxes(ax)
    return axes[:n]


def _method_color(index):
    cycle = rcParams["axes.prop_cycle"].by_key()["color"]
    return cycle[index % len(cycle)]


def _draw_panel(ax, title, rows, methods, value_column):
    """One problem's curves.  Non-finite cells are dropped from the
    series; a dropped cell is counted and reported in the legend so a
    gap is visible as such."""
    skipped = 0
    for method in methods:
        pts = sorted(
            (row["r"], row[value_column])
            for row in rows
            if row["method"] == method
        )
        if not pts:
            continue
        xs = [r for r, v in pts if math.isfinite(v)]
        ys = [v for _, v in pts if math.isfinite(v)]
        skipped += len(pts) - len(xs)
        ax.plot(
            xs,
            ys,
            marker=".",
            markersize=4,
            linewidth=1.0,
            label=method,
            color=_method_color(methods.index(method)),
        )
    ax.set_yscale("log")
    ax.set_title(title, fontsize=9)
    ax.tick_params(labelsize=7)
    handles, labels = ax.get_legend_handles_labels()
    if skipped:
        handles.append(Line2D([], [], linestyle="none"))
        labels.append(f"{skipped} missing cells skipped")
    ax.legend(handles, labels, fontsize=6)


def _panel_figure(rows, problems, methods, value_column, suptitle, ylabel):
    fig = Figure(figsize=(3.2 * min(_PANEL_COLS, len(problems)),
                          2.6 * math.ceil(len(problems) / _PANEL_COLS)))
    axes = _panel_grid(fig, len(problems))
    for ax, pid in zip(axes, problems):
        panel_rows = [row for row in rows if row["problem"] == pid]
        panel_methods = _apply_filter(
            _ordered_unique(row["method"] for row in panel_rows), methods, "methods"
        )
        _draw_panel(ax, pid, panel_rows, panel_methods, value_column)
        ax.set_xlabel("r", fontsize=8)
        ax.set_ylabel(ylabel, fontsize=8)
    fig.suptitle(suptitle, fontsize=11)
    fig.set_layout_engine("tight")
    return fig


def convergence_figures(rows, problems=None, methods=None):
    """Build one figure per matrix function found in the rows.

    Each figure holds one log-error panel per problem with one curve
    per method.  Returns an ordered dict keyed by function name.
    """
    problems = _apply_filter(
        _ordered_unique(row["problem"] for row in rows), problems, "problems"
    )
    if methods is not None:
        _apply_filter(
            _ordered_unique(row["method"] for row in rows), methods, "methods"
        )
    figures = {}
    for function in _ordered_unique(row["function"] for row in rows):
        function_rows = [row for row in rows if row["function"] == function]
        figures[function] = _panel_figure(
            function_rows,
            problems,
            methods,
            "rel_error",
            f"relative error, {function}",
            "relative error",
        )
    return figures


def timings_figure(rows, problems=None, methods=None):
    """Build the time-vs-r figure, one panel per problem, log time axis."""
    problems = _apply_filter(
        _ordered_unique(row["problem"] for row in rows), problems, "problems"
    )
    scaled = [dict(row, wall_time_ms=row["wall_time_ns"] / 1e6) for row in rows]
    return _panel_figure(
        scaled,
        problems,
        methods,
        "wall_time_ms",
        "basis build time",
        "median time [ms]",
    )


def plot_convergence(spec):
    """Render the convergence figures described by ``spec``.

    Writes one image per matrix function into ``spec.output`` and
    returns the paths in file order.
    """
    if spec.kind != "convergence":
        raise ValueError(f"spec kind is {spec.kind!r}, not 'convergence'")
    rows = load_rows(spec.input_csv, "convergence")
    figures = convergence_figures(rows, spec.problems, spec.methods)
    spec.output.mkdir(parents=True, exist_ok=True)
    paths = []
    for function, fig in figures.items():
        path = spec.output / f"convergence_{function}.{spec.image_format}"
        fig.savefig(path)
        paths.append(path)
    return paths


def plot_timings(spec):
    """Render the timing figure described by ``spec`` and return its path."""
    if spec.kind != "timings":
        raise ValueError(f"spec kind is {spec.kind!r}, not 'timings'")
    rows = load_rows(spec.input_csv, "timings")
    fig = timings_figure(rows, spec.problems, spec.methods)
    spec.output.mkdir(parents=True, exist_ok=True)
    path = spec.output / f"timings.{spec.image_format}"
    fig.savefig(path)
    return path
