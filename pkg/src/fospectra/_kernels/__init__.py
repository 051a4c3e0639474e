"""Backend selection for the evaluation kernel.

The Cython extension is used when it was built; otherwise, or when the
environment variable ``FOSPECTRA_PURE`` is set to a non-empty value other
than ``0``, the pure-Python implementation is used.
"""

from __future__ import annotations

import os

from . import _pykernel
from .program import OPCODES, Program, UnboundVariableError, compile_formulas

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

BACKENDS = {"python": _pykernel.Kernel}
if _ckernel is not None:
    BACKENDS["cython"] = _ckernel.Kernel


def _default_backend() -> str:
    if os.environ.get("FOSPECTRA_PURE", "") not in ("", "0"):
        return "python"
    return "cython" if "cython" in BACKENDS else "python"


BACKEND = _default_backend()


def make_kernel(prog: Program, backend: str | None = None):
    name = backend or BACKEND
    try:
        return BACKENDS[name](prog)
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available "
                         f"(have: {', '.join(sorted(BACKENDS))})") from None


__all__ = ["BACKEND", "BACKENDS", "OPCODES", "Program", "UnboundVariableError",
           "compile_formulas", "make_kernel"]
