"""Static scaling figures for window-statistics CSV files.

Consumes the CSV files written by the ``cuspsum`` command-line tool and
renders the figures an analyst reads from them: raw mean-square scaling
with a slope guide, normalized-constant stability with a spread band,
and a free power-law exponent fit.
"""

from plots.figures import (
    EXPECTED_COLUMNS,
    KINDS,
    WEIGHTS,
    PlotJob,
    Row,
    SchemaError,
    build_figure,
    read_rows,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "EXPECTED_COLUMNS",
    "KINDS",
    "WEIGHTS",
    "PlotJob",
    "Row",
    "SchemaError",
    "build_figure",
    "read_rows",
    "render",
    "__version__",
]
