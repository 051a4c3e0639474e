"""Single-tape nondeterministic Turing machines, bounded accepting-run search,
and the layered encoding of an accepting run as a PIF structure.

The encoding uses one element per (tape cell, time interval).  Elements of
one column are chained by ``fu`` (up in time); ``fl``/``fr`` link an element
to the element of the neighbouring column that starts at the same time and
lasts at least as long.  A new layer is added per step and completed by the
cascade rule, and the amortised growth is tracked with the potential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

from ..logic.syntax import Vocabulary
from ..structures import FiniteStructure

LEFT, RIGHT = "L", "R"
FL, FR, FU = "fl", "fr", "fu"


class MachineError(ValueError):
    """Malformed machine or input."""


class BoundsExceeded(RuntimeError):
    """The search was cut off by the time or space bound before finding a run."""


class PadInsufficient(RuntimeError):
    """The encoding needed a column at or beyond the padding boundary."""


@dataclass(frozen=True)
class Transition:
    state: str
    read: str
    target: str
    write: str
    move: str

    def __str__(self):
        return f"{self.state},{self.read} -> {self.target},{self.write},{self.move}"


@dataclass(frozen=True)
class TuringMachine:
    states: tuple
    alphabet: tuple
    transitions: tuple
    initial: str
    final: frozenset
    blank: str = "_"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "final", frozenset(self.final))
        if not self.alphabet:
            raise MachineError("empty tape alphabet")
        if self.blank not in self.alphabet:
            raise MachineError(f"blank {self.blank!r} missing from the alphabet")
        for a in self.alphabet:
            if len(a) != 1:
                raise MachineError(f"letters are single characters, got {a!r}")
        for q in self.states:
            if not q.isidentifier():
                raise MachineError(f"state names must be identifiers, got {q!r}")
        if self.initial not in self.states:
            raise MachineError(f"initial state {self.initial!r} is not a state")
        if not self.final <= set(self.states):
            raise MachineError("final states must be states")
        for t in self.transitions:
            if t.state not in self.states or t.target not in self.states:
                raise MachineError(f"unknown state in {t}")
            if t.read not in self.alphabet or t.write not in self.alphabet:
                raise MachineError(f"unknown letter in {t}")
            if t.move not in (LEFT, RIGHT):
                raise MachineError(f"direction must be L or R in {t}")
            if t.state in self.final:
                raise MachineError(f"final state {t.state!r} has an outgoing transition")

    def options(self, state: str, letter: str) -> list[Transition]:
        return [t for t in self.transitions if t.state == state and t.read == letter]

    def check_input(self, word: str):
        for a in word:
            if a not in self.alphabet or a == self.blank:
                raise MachineError(f"input letter {a!r} is not a non-blank letter")


@dataclass(frozen=True)
class Configuration:
    state: str
    head: int
    tape: tuple  # sorted (position, letter) pairs of non-blank cells

    def letter(self, pos: int, blank: str) -> str:
        for p, a in self.tape:
            if p == pos:
                return a
        return blank

    def step(self, t: Transition, blank: str) -> "Configuration":
        cells = dict(self.tape)
        if t.write == blank:
            cells.pop(self.head, None)
        else:
            cells[self.head] = t.write
        head = self.head + (1 if t.move == RIGHT else -1)
        return Configuration(t.target, head, tuple(sorted(cells.items())))


def initial_configuration(m: TuringMachine, word: str) -> Configuration:
    m.check_input(word)
    return Configuration(m.initial, 0, tuple((i, a) for i, a in enumerate(word)))


@dataclass(frozen=True)
class Trace:
    """An accepting run: ``configs[t+1]`` follows from ``configs[t]`` by ``steps[t]``."""

    machine: TuringMachine
    word: str
    steps: tuple
    configs: tuple = field(repr=False)

    @property
    def time(self) -> int:
        return len(self.steps)

    @property
    def heads(self) -> list[int]:
        return [c.head for c in self.configs]

    @property
    def span(self) -> tuple[int, int]:
        """Cells that are initially non-blank or read by some step."""
        read = self.heads[:-1]
        lo = min([0] + read)
        hi = max([len(self.word) - 1, 0] + read)
        return lo, hi

    @property
    def space(self) -> int:
        lo, hi = self.span
        return hi - lo + 1

    def validate(self):
        m = self.machine
        if self.configs[0] != initial_configuration(m, self.word):
            raise MachineError("trace does not start in the initial configuration")
        for t, (a, b) in enumerate(zip(self.configs, self.configs[1:])):
            tr = self.steps[t]
            if tr not in m.transitions or tr.state != a.state or tr.read != a.letter(a.head, m.blank):
                raise MachineError(f"step {t} does not apply a transition")
            if a.step(tr, m.blank) != b:
                raise MachineError(f"step {t} yields the wrong configuration")
        if self.configs[-1].state not in m.final:
            raise MachineError("trace does not end in a final state")


def _space_of(word: str, heads: list[int]) -> int:
    lo = min([0] + heads)
    hi = max([len(word) - 1, 0] + heads)
    return hi - lo + 1


def _search(m: TuringMachine, word: str, time_bound: int, space_bound: int, cut: list):
    start = initial_configuration(m, word)
    # explicit DFS stack of (configs, steps, next option index)
    stack = [([start], [], 0)]
    while stack:
        configs, steps, k = stack.pop()
        cur = configs[-1]
        if k == 0 and cur.state in m.final:
            yield Trace(m, word, tuple(steps), tuple(configs))
            continue
        opts = m.options(cur.state, cur.letter(cur.head, m.blank))
        if k >= len(opts):
            continue
        stack.append((configs, steps, k + 1))
        if len(steps) + 1 > time_bound:
            cut[0] = True
            continue
        heads = [c.head for c in configs]
        if _space_of(word, heads) > space_bound:
            cut[0] = True
            continue
        nxt = cur.step(opts[k], m.blank)
        stack.append((configs + [nxt], steps + [opts[k]], 0))


def iter_accepting_traces(m: TuringMachine, word: str, time_bound: int,
                          space_bound: int | None = None) -> Iterator[Trace]:
    """All accepting runs within the bounds, in depth-first transition order."""
    space_bound = time_bound + len(word) + 1 if space_bound is None else space_bound
    yield from _search(m, word, time_bound, space_bound, [False])


def tm_search(m: TuringMachine, word: str, time_bound: int,
              space_bound: int | None = None) -> Trace | None:
    """First accepting run in depth-first transition order.

    Returns ``None`` when the machine provably rejects (every branch dies
    within the bounds) and raises :class:`BoundsExceeded` when no run was
    found but some branch was cut off by a bound.
    """
    if time_bound < 1 or (space_bound is not None and space_bound < 1):
        raise ValueError("bounds must be at least 1")
    space_bound = time_bound + len(word) + 1 if space_bound is None else space_bound
    cut = [False]
    for trace in _search(m, word, time_bound, space_bound, cut):
        return trace
    if cut[0]:
        raise BoundsExceeded(f"no accepting run within T<={time_bound}, S<={space_bound}")
    return None


# --- encoding ------------------------------------------------------------------

def letter_symbol(a: str) -> str:
    return "L_" + (a if (a.isalnum() or a == "_") else f"u{ord(a):04x}")


def state_symbol(q: str) -> str:
    return "S_" + q


def tm_vocabulary(m: TuringMachine, exact_four: bool = False) -> Vocabulary:
    unary = ["R", "M", "Tl", "Tr"]
    unary += [state_symbol(q) for q in m.states]
    unary += [letter_symbol(a) for a in m.alphabet]
    if exact_four:
        unary.append("D")
    return Vocabulary(tuple(unary), (FL, FR, FU), ())


def default_pad(time: int) -> int:
    return max(1, math.ceil(math.log2(time + 2)))


MARK, TLEFT, TRIGHT = "M", "Tl", "Tr"


class EncodingState:
    """The partially built layered structure."""

    def __init__(self):
        self.col: list[int] = [0]
        self.start: list[int] = [0]
        self.kind: list[str] = [""]
        self.letter: list[str] = [""]
        self.state: dict[int, str] = {}
        self.links = {FL: {}, FR: {}, FU: {}}
        self.down: dict[int, int] = {}
        self.top: dict[int, int] = {}
        self.head_element = 0
        self.lo = self.hi = 0

    @property
    def size(self) -> int:
        return len(self.col) - 1

    def new(self, x: int, time: int, kind: str, letter: str) -> int:
        e = len(self.col)
        self.col.append(x)
        self.start.append(time)
        self.kind.append(kind)
        self.letter.append(letter)
        below = self.top.get(x)
        if below is not None:
            if self.start[below] == time:
                raise AssertionError(f"column {x} already has an element at time {time}")
            self.links[FU][below] = e
            self.down[e] = below
        self.top[x] = e
        return e

    def side(self, fn: str, e: int) -> int | None:
        """``F_fn(e)``: the direct link, else the link of the element below."""
        link = self.links[fn]
        if e in link:
            return link[e]
        below = self.down.get(e)
        return link.get(below) if below is not None else None

    def chain_count(self, fn: str, e: int) -> int:
        n = 0
        while e is not None:
            if e not in self.links[fn]:
                n += 1
            e = self.side(fn, e)
        return n


def potential(state: EncodingState) -> int:
    """Elements of the ``F_fr`` and ``F_fl`` sequences from the current head
    element whose direct link is missing."""
    e = state.head_element
    if not e:
        raise ValueError("encoding state has no current head element")
    return state.chain_count(FR, e) + state.chain_count(FL, e)


@dataclass
class EncodingResult:
    structure: FiniteStructure
    bottom: int
    pad: int
    new_per_step: list
    potentials: list
    dummies: int = 0

    @property
    def core_size(self) -> int:
        return self.bottom + sum(self.new_per_step)

    def step_costs(self) -> list[int]:
        """``new + (potential after - potential before)`` for each step."""
        return [n + b - a for n, a, b in zip(self.new_per_step, self.potentials, self.potentials[1:])]


def _cascade(st: EncodingState, work: list, time: int, tape_at) -> int:
    created = 0
    while work:
        e = work.pop(0)
        x = st.col[e]
        for fn, kinds, dx, kind in ((FR, (MARK, TRIGHT), 1, TRIGHT), (FL, (MARK, TLEFT), -1, TLEFT)):
            if st.kind[e] not in kinds or st.side(fn, e) is not None:
                continue
            y = x + dx
            if not st.lo < y < st.hi:
                raise PadInsufficient(f"cascade at time {time} reaches boundary column {y}")
            n = st.new(y, time, kind, tape_at(y))
            st.links[fn][e] = n
            work.append(n)
            created += 1
    return created


def encode_trace_stats(trace: Trace, pad: int | None = None, exact_four: bool = False) -> EncodingResult:
    m = trace.machine
    pad = default_pad(trace.time) if pad is None else pad
    if pad < 1:
        raise ValueError("pad must be at least 1")
    lo_s, hi_s = trace.span
    st = EncodingState()
    st.lo, st.hi = lo_s - pad, hi_s + pad
    cfg0 = trace.configs[0]
    for x in range(st.lo, st.hi + 1):
        kind = MARK if x == cfg0.head else (TLEFT if x < cfg0.head else TRIGHT)
        e = st.new(x, 0, kind, cfg0.letter(x, m.blank))
        if kind == MARK:
            st.state[e] = cfg0.state
            st.head_element = e
    for x in range(st.lo, st.hi + 1):
        e = st.top[x]
        if x >= cfg0.head and x < st.hi:
            st.links[FR][e] = st.top[x + 1]
        if x <= cfg0.head and x > st.lo:
            st.links[FL][e] = st.top[x - 1]
    bottom = st.size
    potentials = [potential(st)]
    new_per_step = []
    for t, tr in enumerate(trace.steps, start=1):
        before, after = trace.configs[t - 1], trace.configs[t]
        h, h2 = before.head, after.head
        for y in (h, h2):
            if not st.lo < y < st.hi:
                raise PadInsufficient(f"head reaches boundary column {y} at time {t}")
        a = st.new(h, t, TLEFT if tr.move == RIGHT else TRIGHT, tr.write)
        b = st.new(h2, t, MARK, after.letter(h2, m.blank))
        st.state[b] = after.state
        if tr.move == RIGHT:
            st.links[FL][b] = a
        else:
            st.links[FR][b] = a
        st.head_element = b
        created = 2 + _cascade(st, [a, b], t, lambda y: after.letter(y, m.blank))
        new_per_step.append(created)
        potentials.append(potential(st))

    dummies = 0
    if exact_four:
        dummies = 4 * trace.time - (st.size - bottom)
        if dummies < 0:
            raise AssertionError("encoding exceeded four elements per step")
    structure = _to_structure(st, m, exact_four, dummies)
    return EncodingResult(structure, bottom, pad, new_per_step, potentials, dummies)


def _to_structure(st: EncodingState, m: TuringMachine, exact_four: bool, dummies: int) -> FiniteStructure:
    vocab = tm_vocabulary(m, exact_four)
    n = st.size
    unary = {r: set() for r in vocab.unary}
    for e in range(1, n + 1):
        unary["R"].add(e)
        unary[st.kind[e]].add(e)
        unary[letter_symbol(st.letter[e])].add(e)
        if e in st.state:
            unary[state_symbol(st.state[e])].add(e)
    pif = {fn: dict(st.links[fn]) for fn in (FL, FR, FU)}
    if dummies:
        below = st.head_element
        for k in range(dummies):
            d = n + k + 1
            unary["R"].add(d)
            unary["D"].add(d)
            pif[FU][below] = d
            below = d
        n += dummies
    return FiniteStructure(n, vocab, unary, pif, {})


def encode_trace(trace: Trace, pad: int | None = None, exact_four: bool = False) -> FiniteStructure:
    """Structure over :func:`tm_vocabulary` encoding ``trace``.

    ``|R| <= S + 2*pad + 4*T``; with ``exact_four`` a tower of ``D``-marked
    dummy elements above the final head element makes it an equality.
    """
    return encode_trace_stats(trace, pad, exact_four).structure
