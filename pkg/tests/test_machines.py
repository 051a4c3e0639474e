import itertools

import pytest

from fospectra.machines.io import format_machine, parse_machine
from fospectra.machines.queue import encode_queue_trace, iter_queue_runs, queue_run
from fospectra.machines.samples import SAMPLE_MACHINES, fibonacci_queue_machine, two_sweeps
from fospectra.machines.tm import (
    BoundsExceeded, MachineError, PadInsufficient, encode_trace_stats,
    iter_accepting_traces, tm_search,
)
from fospectra.planarity import planarity


def test_scan_right_example():
    m, word = SAMPLE_MACHINES["scan-right"][0](), "101"
    t = tm_search(m, word, 10)
    assert (t.time, t.space) == (3, 3)
    t.validate()


def test_rejecting_and_bounded():
    m = SAMPLE_MACHINES["palindrome"][0]()
    assert tm_search(m, "ab", 50) is None
    with pytest.raises(BoundsExceeded):
        tm_search(m, "abba", 3)
    with pytest.raises(MachineError):
        tm_search(m, "abc", 10)


def test_two_sweeps_figure_run():
    t = tm_search(two_sweeps(), "110", 20)
    assert (t.time, t.space) == (14, 5)
    # two free cells beyond the span plus the end markers
    res = encode_trace_stats(t, pad=3)
    assert res.bottom == 5 + 2 * 3
    with pytest.raises(PadInsufficient):
        encode_trace_stats(t, pad=2)


@pytest.mark.parametrize("name", sorted(SAMPLE_MACHINES))
def test_accounting(name):
    factory, word = SAMPLE_MACHINES[name]
    for t in itertools.islice(iter_accepting_traces(factory(), word, 30), 20):
        res = encode_trace_stats(t)
        assert res.potentials[0] == 2
        assert all(c <= 4 for c in res.step_costs())
        assert res.structure.size <= t.space + 4 * t.time + 2 * res.pad
        exact = encode_trace_stats(t, exact_four=True)
        assert exact.structure.size == t.space + 4 * t.time + 2 * res.pad
        assert planarity(exact.structure).planar


def test_machine_io_roundtrip():
    for factory, _ in SAMPLE_MACHINES.values():
        m = factory()
        assert parse_machine(format_machine(m)) == m
    q = fibonacci_queue_machine()
    assert parse_machine(format_machine(q)) == q
    with pytest.raises(MachineError):
        parse_machine("states: a\nalphabet: 0\ninitial: b\nfinal: a\n")


def test_queue_runs():
    m = fibonacci_queue_machine()
    res = queue_run(m, "A", 30)
    assert res.lengths == (3, 5, 8, 13, 21)
    for tr in iter_queue_runs(m, "A", 30):
        tr.validate()
        assert planarity(encode_queue_trace(tr)).planar
    with pytest.raises(ValueError):
        queue_run(m, "AA", 1)
