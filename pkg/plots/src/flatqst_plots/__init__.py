"""Publication-style figures rendered from flatqst CSV/JSON outputs."""

from .driver import rebuild_all
from .figures import (
    plot_fidelity_sweep,
    plot_gap_sweep,
    plot_histogram,
    plot_pdf,
    plot_trace,
)
from .readers import SchemaError

__version__ = "0.1.0"
