"""First-order syntax, parsing, evaluation and sentence transformers."""

from .parser import (
    ParseError, UnknownSymbolError, format_formula, format_formula_file, format_term, parse_formula,
    parse_formula_file, parse_term,
)
from .semantics import Checker, UnboundVariableError, evaluate
from .syntax import *  # noqa: F401,F403
from .syntax import Vocabulary, VocabularyError
from .transforms import (
    add_size, companion_vocabulary, delete_element_transform, exactly_n, relativize,
    remove_size, shift_up, structure_companion,
)
