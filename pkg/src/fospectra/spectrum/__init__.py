"""Spectrum membership search, a brute-force oracle and the degree-3 gadget
transformation."""

from .brute import brute_spectrum, enumerate_models, partial_injections
from .gadget import decode_degree3, gadget_vocabulary, pif_to_degree3
from .search import (
    BudgetExceeded, SearchMode, SizeOutcome, SpectrumResult, decide, model_exists,
    spectrum_range,
)

__all__ = [
    "BudgetExceeded", "SearchMode", "SizeOutcome", "SpectrumResult", "brute_spectrum",
    "decide", "decode_degree3", "enumerate_models", "gadget_vocabulary", "model_exists",
    "partial_injections", "pif_to_degree3", "spectrum_range",
]
