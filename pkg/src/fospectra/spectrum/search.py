"""Spectrum membership at a fixed size by SAT search over ground instances."""

from __future__ import annotations

import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from pysat.solvers import Solver

from ..logic.semantics import Checker
from ..logic.syntax import Vocabulary, check_vocabulary, conjuncts, free_vars
from ..planarity import planarity
from ..structures import FiniteStructure, max_degree
from .grounding import Grounding

SOLVER = "cadical153"


class BudgetExceeded(RuntimeError):
    """The conflict budget ran out before the size was decided."""


@dataclass(frozen=True)
class SearchMode:
    """Which models count: all of them, planar ones, or those whose Gaifman
    graph has degree at most ``d`` (optionally also planar)."""

    planar: bool = False
    degree: int | None = None

    def __post_init__(self):
        if self.degree is not None and self.degree < 1:
            raise ValueError("degree bound must be at least 1")

    @classmethod
    def all(cls) -> "SearchMode":
        return cls()

    @classmethod
    def planar_only(cls) -> "SearchMode":
        return cls(planar=True)

    @classmethod
    def degree_at_most(cls, d: int) -> "SearchMode":
        return cls(degree=d)

    @classmethod
    def planar_and_degree(cls, d: int) -> "SearchMode":
        return cls(planar=True, degree=d)

    @classmethod
    def parse(cls, text: str) -> "SearchMode":
        """``all``, ``planar``, ``deg:<d>`` or ``planar+deg:<d>``."""
        m = re.fullmatch(r"(all|planar)|(planar\+)?deg:(\d+)", text.strip())
        if not m:
            raise ValueError(f"unknown search mode {text!r}")
        if m.group(1):
            return cls(planar=m.group(1) == "planar")
        return cls(planar=bool(m.group(2)), degree=int(m.group(3)))

    def __str__(self):
        if self.degree is None:
            return "planar" if self.planar else "all"
        return ("planar+" if self.planar else "") + f"deg:{self.degree}"

    def admits(self, s: FiniteStructure) -> bool:
        if self.degree is not None and max_degree(s) > self.degree:
            return False
        return not self.planar or planarity(s).planar


@dataclass
class SizeOutcome:
    n: int
    status: str  # "member", "nonmember" or "unknown"
    witness: FiniteStructure | None = None
    stats: dict = field(default_factory=dict)


@dataclass
class SpectrumResult:
    sizes: range
    mode: SearchMode
    outcomes: dict  # n -> SizeOutcome

    @property
    def members(self) -> list[int]:
        return [n for n in self.sizes if self.outcomes[n].status == "member"]

    @property
    def nonmembers(self) -> list[int]:
        return [n for n in self.sizes if self.outcomes[n].status == "nonmember"]

    @property
    def unknown(self) -> list[int]:
        return [n for n in self.sizes if self.outcomes[n].status == "unknown"]

    @property
    def witnesses(self) -> dict:
        return {n: o.witness for n, o in self.outcomes.items() if o.witness is not None}

    @property
    def stats(self) -> dict:
        return {n: o.stats for n, o in self.outcomes.items()}


def _check_sentence(phi, vocab: Vocabulary):
    check_vocabulary(phi, vocab)
    if free_vars(phi):
        raise ValueError(f"not a sentence: free variables {sorted(free_vars(phi))}")


def spiral_lemma_applies(phi, vocab: Vocabulary) -> bool:
    """True when every conjunct of the spiral axioms is a top-level conjunct
    of ``phi``, so each model is, up to isomorphism, ``1..n`` with ``inc`` the
    successor and ``dbl`` the doubling map."""
    from ..axioms import phi_M_set  # axioms imports machines; keep this lazy
    spiral = phi_M_set()
    if not spiral.vocab.issubset(vocab):
        return False
    top = set(conjuncts(phi))
    return all(part in top for _, part in spiral.parts)


def _spiral(n: int) -> dict:
    from ..generators import DBL, INC
    return {INC: {a: a + 1 for a in range(1, n)}, DBL: {a: 2 * a for a in range(1, n // 2 + 1)}}


def decide(phi, vocab: Vocabulary, n: int, mode: SearchMode = SearchMode(),
           budget: int | None = None, solver: str = SOLVER,
           lemmas: bool = True) -> SizeOutcome:
    """Search for a model of ``phi`` of size ``n`` admitted by ``mode``.

    ``budget`` caps the total number of solver conflicts; when it runs out the
    outcome is ``"unknown"``.  Witnesses are re-checked with the evaluator and
    the mode predicate before they are returned.

    With ``lemmas``, sentences containing the spiral axioms get ``inc`` and
    ``dbl`` fixed to their unique interpretation; otherwise the solver would
    have to refute every arrangement of ``inc``-cycles, which takes time
    exponential in ``n``.  Other sentences get a generic symmetry-breaking
    constraint instead.
    """
    if n < 1:
        raise ValueError("size must be at least 1")
    _check_sentence(phi, vocab)
    t0 = time.perf_counter()
    spiral = lemmas and spiral_lemma_applies(phi, vocab)
    g = Grounding(vocab, n, fixed=_spiral(n) if spiral else None)
    g.require(phi)
    if not spiral:
        g.break_symmetry()
    if mode.degree is not None:
        g.degree_at_most(mode.degree)
    if mode.planar and n >= 3:
        g.edges_at_most(3 * n - 6)
    stats = {"vars": g.nv, "clauses": len(g.clauses), "conflicts": 0, "refinements": 0,
             "spiral_lemma": spiral}
    status, witness = "nonmember", None
    if [] not in g.clauses:
        with Solver(name=solver, bootstrap_with=g.clauses) as sat:
            while True:
                if budget is None:
                    ok = sat.solve()
                elif budget - stats["conflicts"] <= 0:
                    ok = None
                else:
                    sat.conf_budget(budget - stats["conflicts"])
                    ok = sat.solve_limited()
                stats["conflicts"] = sat.accum_stats().get("conflicts", 0)
                if ok is None:
                    status = "unknown"
                    break
                if not ok:
                    break
                s = FiniteStructure(n, vocab, *g.decode(sat.get_model()))
                if mode.planar:
                    res = planarity(s)
                    if not res.planar:
                        e = g.edges()
                        sat.add_clause([-e[u, v] for u, v in res.kuratowski])
                        stats["refinements"] += 1
                        continue
                if not (Checker([phi], vocab)(s) and mode.admits(s)):
                    raise AssertionError(f"witness of size {n} failed re-verification")
                status, witness = "member", s
                break
    stats["seconds"] = round(time.perf_counter() - t0, 4)
    return SizeOutcome(n, status, witness, stats)


def model_exists(phi, vocab: Vocabulary, n: int, mode: SearchMode = SearchMode(),
                 budget: int | None = None, lemmas: bool = True) -> FiniteStructure | None:
    """A model of size ``n`` or None; raises :class:`BudgetExceeded` rather
    than guessing when the budget runs out."""
    out = decide(phi, vocab, n, mode, budget, lemmas=lemmas)
    if out.status == "unknown":
        raise BudgetExceeded(f"size {n} undecided within {budget} conflicts")
    return out.witness


def _decide_job(args):
    phi, vocab, n, mode, budget, lemmas = args
    return decide(phi, vocab, n, mode, budget, lemmas=lemmas)


def spectrum_range(phi, vocab: Vocabulary, n_lo: int, n_hi: int,
                   mode: SearchMode = SearchMode(), budget: int | None = None,
                   jobs: int = 1, lemmas: bool = True) -> SpectrumResult:
    """Decide every size in ``n_lo..n_hi``; sizes are independent, so with
    ``jobs > 1`` they run in worker processes.  Outcomes are keyed by size."""
    if not 1 <= n_lo <= n_hi:
        raise ValueError("need 1 <= n_lo <= n_hi")
    _check_sentence(phi, vocab)
    sizes = range(n_lo, n_hi + 1)
    args = [(phi, vocab, n, mode, budget, lemmas) for n in sizes]
    if jobs > 1 and len(sizes) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(sizes))) as pool:
            outs = list(pool.map(_decide_job, args))
    else:
        outs = [_decide_job(a) for a in args]
    return SpectrumResult(sizes, mode, {o.n: o for o in outs})
