"""Offline figure generation from solver CSV artifacts."""

from .figures import (FigureSpec, PlotError, load_snapshot, load_table, plot,
                      reshape_2d)
from .specfile import load_spec, parse_spec_text

__version__ = "0.1.0"
