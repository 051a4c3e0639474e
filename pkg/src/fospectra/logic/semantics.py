"""Evaluation of formulas over finite structures.

Atoms are strict: an atom mentioning an undefined term is false.  Above the
atoms the connectives and quantifiers are classical.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from .._kernels import UnboundVariableError, compile_formulas, make_kernel
from .syntax import Vocabulary, check_vocabulary, free_vars

__all__ = ["evaluate", "Checker", "UnboundVariableError"]


@lru_cache(maxsize=512)
def _compiled(phis: tuple, vocab: Vocabulary, free: tuple):
    return compile_formulas(phis, vocab, free)


def evaluate(struct, phi, asg: Mapping[str, int] | None = None, backend: str | None = None) -> bool:
    """Truth value of ``phi`` in ``struct`` under the assignment ``asg``."""
    asg = dict(asg or {})
    check_vocabulary(phi, struct.vocab)
    missing = free_vars(phi) - set(asg)
    if missing:
        raise UnboundVariableError(f"free variable(s) {sorted(missing)} are not assigned")
    free = tuple(sorted(asg))
    for name, x in asg.items():
        if not 1 <= int(x) <= struct.size:
            raise ValueError(f"assignment {name}={x} outside 1..{struct.size}")
    kernel = make_kernel(_compiled((phi,), struct.vocab, free), backend)
    kernel.set_structure(struct.size, *struct.arrays)
    return kernel.evaluate(0, [int(asg[v]) for v in free])


class Checker:
    """A list of sentences compiled once and checked on many structures.

    ``checker(s)`` is true when every sentence holds; :meth:`failures` names
    the ones that do not.
    """

    def __init__(self, sentences, vocab: Vocabulary, names=None, backend: str | None = None):
        self.sentences = tuple(sentences)
        self.names = tuple(names) if names else tuple(f"#{i}" for i in range(len(self.sentences)))
        self.vocab = vocab
        for phi in self.sentences:
            check_vocabulary(phi, vocab)
            if free_vars(phi):
                raise UnboundVariableError(f"not a sentence: free {sorted(free_vars(phi))}")
        self.kernel = make_kernel(_compiled(self.sentences, vocab, ()), backend)

    def _load(self, struct):
        if struct.vocab != self.vocab:
            struct = struct.reduct(self.vocab) if self.vocab.issubset(struct.vocab) else None
            if struct is None:
                raise ValueError("structure vocabulary does not cover the checker's")
        self.kernel.set_structure(struct.size, *struct.arrays)

    def __call__(self, struct) -> bool:
        self._load(struct)
        return all(self.kernel.evaluate(i) for i in range(len(self.sentences)))

    def values(self, struct) -> list[bool]:
        self._load(struct)
        return [self.kernel.evaluate(i) for i in range(len(self.sentences))]

    def failures(self, struct) -> list[str]:
        return [nm for nm, ok in zip(self.names, self.values(struct)) if not ok]
