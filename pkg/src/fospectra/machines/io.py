"""Text format for machine descriptions.

::

    # comment
    states: q0 q1 qf
    alphabet: 0 1 _
    initial: q0
    final: qf
    q0,0 -> q0,0,R            # Turing machine rule
    q,"A" -> q,"Ab"           # queue machine rule

A file holds one kind of rule.  Turing machines may add ``blank: <letter>``
(default ``_``).
"""

from __future__ import annotations

import re
from pathlib import Path

from .queue import QueueMachine, QueueRule
from .tm import MachineError, Transition, TuringMachine

_TM_RULE = re.compile(r"^(\w+)\s*,\s*(\S)\s*->\s*(\w+)\s*,\s*(\S)\s*,\s*([LR])$")
_Q_RULE = re.compile(r'^(\w+)\s*,\s*"([^"]*)"\s*->\s*(\w+)\s*,\s*"([^"]*)"$')
_HEADERS = ("states", "alphabet", "initial", "final", "blank")


def parse_machine(text: str) -> TuringMachine | QueueMachine:
    head: dict[str, list[str]] = {}
    tm_rules, q_rules = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() in _HEADERS:
            head[key.strip()] = rest.split()
            continue
        if mt := _TM_RULE.match(line):
            q, a, q2, b, d = mt.groups()
            tm_rules.append(Transition(q, a, q2, b, d))
        elif mq := _Q_RULE.match(line):
            q, w1, q2, w2 = mq.groups()
            q_rules.append(QueueRule(q, w1, w2, q2))
        else:
            raise MachineError(f"line {lineno}: cannot parse {raw.strip()!r}")
    for key in ("states", "alphabet", "initial", "final"):
        if key not in head:
            raise MachineError(f"missing '{key}:' line")
    if len(head["initial"]) != 1:
        raise MachineError("exactly one initial state expected")
    if tm_rules and q_rules:
        raise MachineError("file mixes Turing machine and queue machine rules")
    common = dict(states=tuple(head["states"]), alphabet=tuple(head["alphabet"]),
                  initial=head["initial"][0], final=frozenset(head["final"]))
    if q_rules:
        return QueueMachine(rules=tuple(q_rules), **common)
    blank = head.get("blank", ["_"])
    return TuringMachine(transitions=tuple(tm_rules), blank=blank[0], **common)


def load_machine(path: str | Path) -> TuringMachine | QueueMachine:
    return parse_machine(Path(path).read_text(encoding="ascii"))


def format_machine(m: TuringMachine | QueueMachine) -> str:
    lines = [f"states: {' '.join(m.states)}", f"alphabet: {' '.join(m.alphabet)}",
             f"initial: {m.initial}", f"final: {' '.join(sorted(m.final))}"]
    if isinstance(m, TuringMachine):
        if m.blank != "_":
            lines.append(f"blank: {m.blank}")
        lines += [str(t) for t in m.transitions]
    else:
        lines += [str(r) for r in m.rules]
    return "\n".join(lines) + "\n"
