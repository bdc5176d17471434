"""Panel plots for attitude-tracking time-series CSV exports."""

from .render import FigureSpec, JBAR_STYLES, render
from .schema import EXPECTED_HEADER, SchemaError, load_timeseries

__version__ = "0.1.0"

__all__ = [
    "EXPECTED_HEADER",
    "FigureSpec",
    "JBAR_STYLES",
    "SchemaError",
    "load_timeseries",
    "render",
]
