"""Turn benchmark CSVs into convergence and timing figures.

The package reads the CSV files written by the experiment harness and
renders one error-versus-dimension figure per matrix function plus a
build-time figure, each with one panel per problem and one curve per
method.  It touches nothing but the documented CSV columns.
"""

from hamplots.figures import (
    CsvFormatError,
    FigureSpec,
    KINDS,
    convergence_figures,
    load_rows,
    plot_convergence,
    plot_timings,
    timings_figure,
)

__all__ = [
    "CsvFormatError",
    "FigureSpec",
    "KINDS",
    "convergence_figures",
    "load_rows",
    "plot_convergence",
    "plot_timings",
    "timings_figure",
]
