"""First-order spectra over structures with partial injective functions."""

__version__ = "0.1.0"

# the kernels compile logic formulas, so logic must finish importing first
from . import logic  # noqa: E402,F401
