"""Small machines used by the tests, the benchmarks and the CLI."""

from __future__ import annotations

from .queue import QueueMachine, QueueRule
from .tm import LEFT, RIGHT, Transition, TuringMachine


def _tm(states, alphabet, rules, initial="q0", final=("qf",)):
    trs = [Transition(q, a, q2, b, d) for q, a, q2, b, d in rules]
    return TuringMachine(tuple(states), tuple(alphabet), tuple(trs), initial, frozenset(final))


def immediate_accept() -> TuringMachine:
    return TuringMachine(("qf",), ("0", "1", "_"), (), "qf", frozenset({"qf"}))


def one_step() -> TuringMachine:
    return _tm(["q0", "qf"], "01_", [("q0", a, "qf", a, RIGHT) for a in "01_"])


def scan_right() -> TuringMachine:
    """Move right over the input; after any letter it may stop in ``qf``.

    Depth-first search keeps scanning first, so the run it finds stops on
    the last input letter: ``T = S = |w|``.
    """
    rules = []
    for a in "01":
        rules.append(("q0", a, "q0", a, RIGHT))
        rules.append(("q0", a, "qf", a, RIGHT))
    return _tm(["q0", "qf"], "01_", rules)


def bouncer() -> TuringMachine:
    """Right to the blank after the input, back left to the blank before it."""
    rules = []
    for a in "01":
        rules += [("q0", a, "q0", a, RIGHT), ("q1", a, "q1", a, LEFT)]
    rules += [("q0", "_", "q1", "_", LEFT), ("q1", "_", "qf", "_", RIGHT)]
    return _tm(["q0", "q1", "qf"], "01_", rules)


def two_sweeps() -> TuringMachine:
    """Right, left, right across the input, then two more cells left.

    On a three-letter input it runs 14 steps over 5 cells.
    """
    rules = []
    for a in "01":
        rules += [("r1", a, "r1", a, RIGHT), ("l1", a, "l1", a, LEFT),
                  ("r2", a, "r2", a, RIGHT), ("l2", a, "l3", a, LEFT), ("l3", a, "qf", a, LEFT)]
    rules += [("r1", "_", "l1", "_", LEFT), ("l1", "_", "r2", "_", RIGHT),
              ("r2", "_", "l2", "_", LEFT)]
    return _tm(["r1", "l1", "r2", "l2", "l3", "qf"], "01_", rules, initial="r1")


def palindrome() -> TuringMachine:
    """Accepts palindromes over {a, b} by erasing matching end letters."""
    rules = [("q0", "_", "qf", "_", RIGHT)]
    for a in "ab":
        right, check = f"r{a}", f"c{a}"
        rules.append(("q0", a, right, "_", RIGHT))
        rules += [(right, b, right, b, RIGHT) for b in "ab"]
        rules.append((right, "_", check, "_", LEFT))
        rules.append((check, a, "back", "_", LEFT))
        rules.append((check, "_", "qf", "_", RIGHT))
    rules += [("back", b, "back", b, LEFT) for b in "ab"]
    rules.append(("back", "_", "q0", "_", RIGHT))
    states = ["q0", "ra", "rb", "ca", "cb", "back", "qf"]
    return _tm(states, "ab_", rules)


def guess_and_mark() -> TuringMachine:
    """Nondeterministically rewrite some prefix letters to ``x``, then return."""
    rules = []
    for a in "01":
        rules += [("q0", a, "q0", "x", RIGHT), ("q0", a, "q1", a, LEFT)]
    rules += [("q1", "x", "q1", "x", LEFT), ("q1", "_", "qf", "_", RIGHT)]
    return _tm(["q0", "q1", "qf"], "01x_", rules)


SAMPLE_MACHINES = {
    "immediate": (immediate_accept, ""),
    "one-step": (one_step, "1"),
    "scan-right": (scan_right, "101"),
    "bouncer": (bouncer, "0110"),
    "two-sweeps": (two_sweeps, "110"),
    "palindrome": (palindrome, "abba"),
    "guess-mark": (guess_and_mark, "0101"),
}


def fibonacci_queue_machine() -> QueueMachine:
    rules = (QueueRule("q", "b", "a", "q"), QueueRule("q", "a", "ab", "q"),
             QueueRule("q", "A", "Ab", "q"), QueueRule("q", "A", "AA", "qF"))
    return QueueMachine(("q", "qF"), ("A", "a", "b"), rules, "q", frozenset({"qF"}))
