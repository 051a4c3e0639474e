"""Turing machines, queue machines and their structure encodings."""

from .io import format_machine, load_machine, parse_machine
from .queue import (
    QueueMachine, QueueRule, QueueRunResult, QueueStep, QueueTrace, encode_queue_trace,
    iter_queue_runs, queue_run, queue_vocabulary,
)
from .samples import SAMPLE_MACHINES, fibonacci_queue_machine
from .tm import (
    BoundsExceeded, Configuration, EncodingResult, EncodingState, MachineError,
    PadInsufficient, Trace, Transition, TuringMachine, default_pad, encode_trace,
    encode_trace_stats, initial_configuration, iter_accepting_traces, letter_symbol,
    potential, state_symbol, tm_search, tm_vocabulary,
)

__all__ = [
    "BoundsExceeded", "Configuration", "EncodingResult", "EncodingState", "MachineError",
    "PadInsufficient", "QueueMachine", "QueueRule", "QueueRunResult", "QueueStep",
    "QueueTrace", "SAMPLE_MACHINES", "Trace", "Transition", "TuringMachine", "default_pad",
    "encode_queue_trace", "encode_trace", "encode_trace_stats", "fibonacci_queue_machine",
    "format_machine", "initial_configuration", "iter_accepting_traces", "iter_queue_runs",
    "letter_symbol", "load_machine", "parse_machine", "potential", "queue_run",
    "queue_vocabulary", "state_symbol", "tm_search", "tm_vocabulary",
]
