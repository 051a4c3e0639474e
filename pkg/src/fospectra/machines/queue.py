"""Queue machines: a read head and a write head moving right over one tape.

A rule ``(q, w1, w2, q2)`` applies in state ``q`` when the unread part of the
tape starts with ``w1``; the read head skips ``w1``, ``w2`` is appended at
the write head and the state becomes ``q2``.  Symbols are never erased, so
the tape only grows.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..logic.syntax import Vocabulary
from ..structures import FiniteStructure
from .tm import MachineError, letter_symbol, state_symbol

NEXT, RW = "next", "rw"


@dataclass(frozen=True)
class QueueRule:
    state: str
    read: str
    write: str
    target: str

    def __str__(self):
        return f'{self.state},"{self.read}" -> {self.target},"{self.write}"'


@dataclass(frozen=True)
class QueueMachine:
    states: tuple
    alphabet: tuple
    rules: tuple
    initial: str
    final: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "final", frozenset(self.final))
        if not self.alphabet or any(len(a) != 1 for a in self.alphabet):
            raise MachineError("alphabet must be a non-empty set of single characters")
        for q in self.states:
            if not q.isidentifier():
                raise MachineError(f"state names must be identifiers, got {q!r}")
        if self.initial not in self.states or not self.final <= set(self.states):
            raise MachineError("initial and final states must be states")
        for r in self.rules:
            if not r.read or not r.write:
                raise MachineError(f"rule {r} has an empty word")
            if r.state not in self.states or r.target not in self.states:
                raise MachineError(f"unknown state in rule {r}")
            if not set(r.read + r.write) <= set(self.alphabet):
                raise MachineError(f"unknown letter in rule {r}")
            if r.state in self.final:
                raise MachineError(f"final state {r.state!r} has an outgoing rule")

    def check_input(self, word: str):
        if not word or not set(word) <= set(self.alphabet):
            raise MachineError(f"initial word {word!r} must be a non-empty word over the alphabet")


@dataclass(frozen=True)
class QueueStep:
    read: int   # 1-based read-head position before the step
    write: int  # 1-based write-head position before the step
    rule: QueueRule


@dataclass(frozen=True)
class QueueTrace:
    machine: QueueMachine
    initial: str
    tape: str
    steps: tuple
    final_read: int
    final_state: str

    @property
    def length(self) -> int:
        return len(self.tape)

    def read_positions(self) -> list[int]:
        return [s.read for s in self.steps] + [self.final_read]

    def states(self) -> list[str]:
        return [s.rule.state for s in self.steps] + [self.final_state]

    def validate(self):
        m = self.machine
        m.check_input(self.initial)
        tape, r, w, q = self.initial, 1, len(self.initial) + 1, m.initial
        for s in self.steps:
            if (s.read, s.write) != (r, w) or s.rule not in m.rules or s.rule.state != q:
                raise MachineError("step does not follow the machine")
            if tape[r - 1:r - 1 + len(s.rule.read)] != s.rule.read:
                raise MachineError(f"rule {s.rule} does not match the tape at {r}")
            tape += s.rule.write
            r, w, q = r + len(s.rule.read), w + len(s.rule.write), s.rule.target
        if tape != self.tape or r != self.final_read or q != self.final_state or q not in m.final:
            raise MachineError("trace does not end as recorded")


@dataclass(frozen=True)
class QueueRunResult:
    lengths: tuple
    witnesses: dict

    def __contains__(self, n):
        return n in self.witnesses


def iter_queue_runs(m: QueueMachine, initial: str, max_len: int):
    """Every halting run whose tape never exceeds ``max_len``, depth first."""
    m.check_input(initial)
    if max_len < len(initial):
        raise ValueError("max_len is shorter than the initial word")
    stack = [(initial, 1, m.initial, ())]
    while stack:
        tape, r, q, steps = stack.pop()
        if q in m.final:
            yield QueueTrace(m, initial, tape, steps, r, q)
            continue
        moves = []
        for rule in m.rules:
            if rule.state != q or len(tape) + len(rule.write) > max_len:
                continue
            if tape.startswith(rule.read, r - 1) and r - 1 + len(rule.read) <= len(tape):
                step = QueueStep(r, len(tape) + 1, rule)
                moves.append((tape + rule.write, r + len(rule.read), rule.target, steps + (step,)))
        stack.extend(reversed(moves))  # first rule explored first


def queue_run(m: QueueMachine, initial: str, max_len: int) -> QueueRunResult:
    """Achievable halting tape lengths up to ``max_len``, with the first witness
    found for each."""
    witnesses = {}
    for tr in iter_queue_runs(m, initial, max_len):
        witnesses.setdefault(tr.length, tr)
    return QueueRunResult(tuple(sorted(witnesses)), {n: witnesses[n] for n in sorted(witnesses)})


def queue_vocabulary(m: QueueMachine) -> Vocabulary:
    unary = [letter_symbol(a) for a in m.alphabet] + [state_symbol(q) for q in m.states]
    return Vocabulary(tuple(unary), (NEXT, RW), ())


def encode_queue_trace(t: QueueTrace) -> FiniteStructure:
    """Tape positions ``1..n`` with successor ``next``, ``rw`` from each read
    position to the write position at the same time, letters and states."""
    m = t.machine
    n = t.length
    vocab = queue_vocabulary(m)
    unary = {r: set() for r in vocab.unary}
    for i, a in enumerate(t.tape, start=1):
        unary[letter_symbol(a)].add(i)
    for pos, q in zip(t.read_positions(), t.states()):
        unary[state_symbol(q)].add(pos)
    nxt = {i: i + 1 for i in range(1, n)}
    rw = {s.read: s.write for s in t.steps}
    return FiniteStructure(n, vocab, unary, {NEXT: nxt, RW: rw}, {})
