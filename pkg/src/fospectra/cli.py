"""Command-line entry point: ``fospectra <command> ...``.

Exit status is 0 on success, 1 on domain errors (bad files, unsatisfiable
requests, exhausted bounds) and 2 on usage errors.  Output depends only on
the inputs, the seed and the budget.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from pathlib import Path

from . import axioms, generators
from .hanf import DegreeError, hanf_equivalent, type_census
from .logic import (
    Checker, ParseError, Vocabulary, VocabularyError, add_size, delete_element_transform,
    format_formula_file, parse_formula_file, remove_size, shift_up,
)
from .machines.io import format_machine, load_machine
from .machines.queue import QueueMachine, encode_queue_trace, iter_queue_runs, queue_run
from .machines.samples import SAMPLE_MACHINES, fibonacci_queue_machine
from .machines.tm import (
    BoundsExceeded, MachineError, PadInsufficient, TuringMachine, encode_trace_stats, tm_search,
)
from .planarity import planarity
from .spectrum import SearchMode, brute_spectrum, pif_to_degree3, spectrum_range
from .structures import (
    FormatError, StructureError, cycle_structure, deserialize, graph_to_structure,
    path_structure, random_structure, serialize,
)

DEFAULT_SEED = 0


class CLIError(Exception):
    """A domain error reported with exit status 1."""


DOMAIN_ERRORS = (CLIError, ValueError, StructureError, FormatError, ParseError, VocabularyError,
                 MachineError, BoundsExceeded, PadInsufficient, DegreeError, OSError)


# --- shared helpers -------------------------------------------------------------

def _emit(args, text_lines, record):
    if args.format == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _write_or_print(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def _read_structure(path: str):
    return deserialize(Path(path).read_text(encoding="ascii"))


def _read_formula(path: str):
    return parse_formula_file(Path(path).read_text(encoding="ascii"))


def _machine(spec: str):
    """A machine file path or ``builtin:<name>`` for the bundled samples."""
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name == "fib-queue":
            return fibonacci_queue_machine()
        if name not in SAMPLE_MACHINES:
            have = ", ".join(["fib-queue", *SAMPLE_MACHINES])
            raise CLIError(f"unknown builtin machine {name!r} (have: {have})")
        return SAMPLE_MACHINES[name][0]()
    return load_machine(spec)


def _default_word(spec: str) -> str | None:
    if spec.startswith("builtin:"):
        entry = SAMPLE_MACHINES.get(spec.split(":", 1)[1])
        return entry[1] if entry else None
    return None


def _tm(spec: str) -> TuringMachine:
    m = _machine(spec)
    if not isinstance(m, TuringMachine):
        raise CLIError(f"{spec} is a queue machine, not a Turing machine")
    return m


def _qm(spec: str) -> QueueMachine:
    m = _machine(spec)
    if not isinstance(m, QueueMachine):
        raise CLIError(f"{spec} is a Turing machine, not a queue machine")
    return m


def _axiom_set(args):
    fam = args.family
    if fam in ("tm", "queue"):
        if not args.machine:
            raise CLIError(f"family {fam} needs --machine")
        if fam == "tm":
            word = args.word if args.word is not None else _default_word(args.machine)
            return axioms.tm_set(_tm(args.machine), word, exact_four=args.exact_four)
        return axioms.queue_set(_qm(args.machine), args.word)
    return axioms.axiom_set(fam)


def _parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if not 1 <= lo <= hi:
        raise argparse.ArgumentTypeError("need 1 <= a <= b")
    return lo, hi


def _mode(text: str) -> SearchMode:
    try:
        return SearchMode.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


# --- gen --------------------------------------------------------------------------

GEN_FAMILIES = ("spiral", "powers", "multiply", "fib", "fib-planar", "binary",
                "forcing-grid", "cycle", "path", "random")


def cmd_gen(args):
    n, fam = args.n, args.family
    if fam == "spiral":
        s = generators.spiral(n)
    elif fam == "powers":
        s = generators.powers_structure(n)
    elif fam == "multiply":
        if args.c is None:
            raise CLIError("multiply needs --c")
        s = generators.multiplication_structure(n, args.c)
    elif fam in ("fib", "fib-planar"):
        s = generators.fibonacci_structure(n, planar_variant=fam == "fib-planar")
    elif fam == "binary":
        s = generators.binary_rep_structure(n)
    elif fam == "forcing-grid":
        s, _ = generators.forcing_grid(n, args.d)
    elif fam == "cycle":
        s = cycle_structure(n)
    elif fam == "path":
        s = path_structure(n)
    else:
        vocab = Vocabulary(tuple(f"U{i}" for i in range(args.unary)),
                           tuple(f"f{i}" for i in range(args.pifs)), ())
        s = random_structure(vocab, n, random.Random(args.seed), args.density)
    _write_or_print(serialize(s), args.output)
    return 0


# --- check / axioms ------------------------------------------------------------------

def cmd_check(args):
    s = _read_structure(args.structure)
    if args.formula:
        phi, vocab = _read_formula(args.formula)
        names, sentences = ("formula",), [phi]
    else:
        aset = _axiom_set(args)
        vocab, names, sentences = aset.vocab, aset.names, [p for _, p in aset.parts]
    if not vocab.issubset(s.vocab):
        raise CLIError("structure does not interpret every symbol of the sentence")
    checker = Checker(sentences, vocab, names)
    failed = checker.failures(s)
    lines = ["false" if failed else "true"] + [f"fails {nm}" for nm in failed]
    _emit(args, lines, {"holds": not failed, "failures": failed})
    return 0


def cmd_axioms(args):
    aset = _axiom_set(args)
    _write_or_print(format_formula_file(aset.formula, aset.vocab, aset.parts), args.output)
    return 0


def _sentence(args):
    if args.formula:
        return _read_formula(args.formula)
    aset = _axiom_set(args)
    return aset.formula, aset.vocab


# --- spectrum -----------------------------------------------------------------------

def cmd_spectrum(args):
    phi, vocab = _sentence(args)
    lo, hi = args.range
    wdir = Path(args.witness_dir) if args.witness_dir else None
    if wdir:
        wdir.mkdir(parents=True, exist_ok=True)
    records = []
    if args.engine == "brute":
        if args.mode.planar or args.mode.degree is not None:
            raise CLIError("the brute-force engine only supports --mode all")
        found = brute_spectrum(phi, vocab, range(lo, hi + 1))
        records = [{"n": n, "status": "member" if n in found else "nonmember"}
                   for n in range(lo, hi + 1)]
    else:
        res = spectrum_range(phi, vocab, lo, hi, args.mode, args.budget, args.jobs,
                             lemmas=not args.no_lemmas)
        for n in res.sizes:
            out = res.outcomes[n]
            rec = {"n": n, "status": out.status}
            if out.witness is not None and wdir:
                path = wdir / f"n{n}.fm"
                path.write_text(serialize(out.witness), encoding="ascii")
                rec["witness"] = str(path)
            if args.stats:
                rec["stats"] = {k: v for k, v in out.stats.items() if k != "seconds"}
            records.append(rec)
    for rec in records:
        if args.format == "json":
            print(json.dumps(rec, sort_keys=True))
        else:
            line = f"n={rec['n']} {rec['status']}"
            if "witness" in rec:
                line += f" witness={rec['witness']}"
            print(line)
    return 0


# --- machines -------------------------------------------------------------------------

def _word(args):
    word = args.word if args.word is not None else _default_word(args.machine)
    if word is None:
        raise CLIError("--word is required for machine files")
    return word


def cmd_tm_search(args):
    m = _tm(args.machine)
    word = _word(args)
    trace = tm_search(m, word, args.time, args.space)
    if trace is None:
        _emit(args, ["reject"], {"accepts": False})
        return 0
    lines = ["accept", f"time {trace.time}", f"space {trace.space}"]
    lines += [f"step {i} {t}" for i, t in enumerate(trace.steps)]
    _emit(args, lines, {"accepts": True, "time": trace.time, "space": trace.space,
                        "steps": [str(t) for t in trace.steps]})
    return 0


def cmd_tm_encode(args):
    m = _tm(args.machine)
    word = _word(args)
    trace = tm_search(m, word, args.time, args.space)
    if trace is None:
        raise CLIError("the machine rejects the word; nothing to encode")
    res = encode_trace_stats(trace, args.pad, exact_four=args.exact_four)
    Path(args.output).write_text(serialize(res.structure), encoding="ascii")
    size = res.structure.size
    bound = trace.space + 4 * trace.time + 2 * res.pad
    lines = [f"time {trace.time}", f"space {trace.space}", f"pad {res.pad}",
             f"size {size}", f"bound {bound}", f"output {args.output}"]
    _emit(args, lines, {"time": trace.time, "space": trace.space, "pad": res.pad,
                        "size": size, "bound": bound, "output": args.output})
    return 0


def cmd_queue_run(args):
    m = _qm(args.machine)
    res = queue_run(m, args.initial, args.max_len)
    lines = [" ".join(map(str, res.lengths))] if res.lengths else ["none"]
    if args.tapes:
        lines += [f"{n} {res.witnesses[n].tape}" for n in res.lengths]
    _emit(args, lines, {"lengths": list(res.lengths),
                        "tapes": {str(n): res.witnesses[n].tape for n in res.lengths}})
    return 0


def cmd_queue_encode(args):
    m = _qm(args.machine)
    trace = next((t for t in iter_queue_runs(m, args.initial, args.length)
                  if t.length == args.length and (args.tape is None or t.tape == args.tape)), None)
    if trace is None:
        raise CLIError(f"no halting run of length {args.length}")
    Path(args.output).write_text(serialize(encode_queue_trace(trace)), encoding="ascii")
    _emit(args, [f"tape {trace.tape}", f"output {args.output}"],
          {"tape": trace.tape, "output": args.output})
    return 0


def cmd_machine_show(args):
    sys.stdout.write(format_machine(_machine(args.machine)))
    return 0


# --- hanf / transform / planarity ---------------------------------------------------------

def cmd_hanf_census(args):
    s = _read_structure(args.structure)
    census = type_census(s, args.r, args.M, args.d)
    types = [{"type": t.digest(), "count": k, "dump": t.dump()} for t, k in census.counts]
    lines = []
    for rec in types:
        lines += [f"type {rec['type']} count {rec['count']}", f"  {rec['dump']}"]
    record = {"r": args.r, "M": args.M, "d": args.d, "types": types}
    if args.against:
        other = _read_structure(args.against)
        eq = hanf_equivalent(s, other, args.r, args.M, args.d)
        lines.append(f"equivalent {str(eq).lower()}")
        record["equivalent"] = eq
    _emit(args, lines, record)
    return 0


def cmd_transform_deg3(args):
    s = _read_structure(args.structure)
    g = pif_to_degree3(s, args.l, planar_order=args.planar_order)
    _write_or_print(serialize(graph_to_structure(g)), args.output)
    return 0


def cmd_transform_closure(args):
    phi, vocab = _read_formula(args.formula)
    if args.op in ("add-size", "remove-size"):
        if args.n is None:
            raise CLIError(f"{args.op} needs --n")
        out = (add_size if args.op == "add-size" else remove_size)(phi, args.n), vocab
    elif args.op == "shift-up":
        out = shift_up(phi, vocab)
    else:
        out = delete_element_transform(phi, vocab)
    _write_or_print(format_formula_file(out[0], out[1]), args.output)
    return 0


def cmd_planarity(args):
    s = _read_structure(args.structure)
    res = planarity(s)
    lines = ["planar" if res.planar else "nonplanar"]
    record = {"planar": res.planar}
    if args.certificate:
        if res.planar:
            rot = {v: list(res.rotation.get(v, ())) for v in s.elements}
            lines += [f"{v}: {' '.join(map(str, nb))}" for v, nb in rot.items()]
            record["rotation"] = {str(v): nb for v, nb in rot.items()}
        else:
            lines += [f"{u}-{v}" for u, v in res.kuratowski]
            record["kuratowski"] = [list(e) for e in res.kuratowski]
    _emit(args, lines, record)
    return 0


# --- parser ---------------------------------------------------------------------------------

def _add_family_args(p):
    fams = (*axioms.FAMILIES, "tm", "queue")
    p.add_argument("--machine", help="machine file or builtin:<name> for the tm/queue families")
    p.add_argument("--word", help="input word (tm) or initial tape (queue)")
    p.add_argument("--exact-four", action="store_true", help="tm family: exact-size variant")
    return fams


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fospectra",
                                description="First-order spectra over PIF structures.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomised commands")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a structure")
    g.add_argument("family", choices=GEN_FAMILIES)
    g.add_argument("n", type=_positive)
    g.add_argument("--c", type=_positive, help="multiplier for 'multiply'")
    g.add_argument("--d", type=_positive, default=11, help="digit base for 'forcing-grid'")
    g.add_argument("--pifs", type=_nonneg, default=2, help="random: number of PIFs")
    g.add_argument("--unary", type=_nonneg, default=1, help="random: number of unary relations")
    g.add_argument("--density", type=float, default=0.7, help="random: PIF domain density")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="evaluate a sentence on a structure")
    c.add_argument("-s", "--structure", required=True)
    src = c.add_mutually_exclusive_group(required=True)
    fams = _add_family_args(c)
    src.add_argument("-a", "--family", choices=fams)
    src.add_argument("-f", "--formula")
    c.set_defaults(func=cmd_check)

    a = sub.add_parser("axioms", help="print an axiom family as a formula file")
    a.add_argument("family", choices=_add_family_args(a))
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_axioms)

    sp = sub.add_parser("spectrum", help="decide spectrum membership over a size range")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--formula")
    src.add_argument("--family", choices=_add_family_args(sp))
    sp.add_argument("--range", type=_parse_range, required=True, metavar="A..B")
    sp.add_argument("--mode", type=_mode, default=SearchMode(), metavar="all|planar|deg:D|planar+deg:D")
    sp.add_argument("--budget", type=_positive, help="solver conflicts per size")
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--engine", choices=("sat", "brute"), default="sat")
    sp.add_argument("--no-lemmas", action="store_true", help="do not fix the spiral")
    sp.add_argument("--witness-dir", help="write witnesses as n<k>.fm here")
    sp.add_argument("--stats", action="store_true", help="include solver statistics (json)")
    sp.set_defaults(func=cmd_spectrum)

    tm = sub.add_parser("tm", help="Turing machine search and encoding")
    tsub = tm.add_subparsers(dest="action", required=True)
    for name, func in (("search", cmd_tm_search), ("encode", cmd_tm_encode)):
        t = tsub.add_parser(name)
        t.add_argument("machine", help="machine file or builtin:<name>")
        t.add_argument("--word")
        t.add_argument("--time", type=_positive, default=50)
        t.add_argument("--space", type=_positive)
        if name == "encode":
            t.add_argument("--pad", type=_nonneg)
            t.add_argument("--exact-four", action="store_true")
            t.add_argument("-o", "--output", required=True)
        t.set_defaults(func=func)
    t = tsub.add_parser("show", help="print a machine in file format")
    t.add_argument("machine")
    t.set_defaults(func=cmd_machine_show)

    q = sub.add_parser("queue", help="queue machine runs and encoding")
    qsub = q.add_subparsers(dest="action", required=True)
    r = qsub.add_parser("run")
    r.add_argument("machine")
    r.add_argument("--initial", default="A")
    r.add_argument("--max-len", type=_positive, required=True)
    r.add_argument("--tapes", action="store_true", help="also print one witness tape per length")
    r.set_defaults(func=cmd_queue_run)
    e = qsub.add_parser("encode")
    e.add_argument("machine")
    e.add_argument("--initial", default="A")
    e.add_argument("--length", type=_positive, required=True)
    e.add_argument("--tape", help="require this final tape")
    e.add_argument("-o", "--output", required=True)
    e.set_defaults(func=cmd_queue_encode)

    h = sub.add_parser("hanf-census", help="capped census of neighbourhood types")
    h.add_argument("-s", "--structure", required=True)
    h.add_argument("-r", type=_nonneg, required=True)
    h.add_argument("-M", type=_positive, required=True)
    h.add_argument("-d", type=_nonneg, required=True)
    h.add_argument("--against", help="second structure to compare with")
    h.set_defaults(func=cmd_hanf_census)

    tr = sub.add_parser("transform", help="degree-3 gadget and spectrum closure operations")
    trsub = tr.add_subparsers(dest="action", required=True)
    d3 = trsub.add_parser("deg3")
    d3.add_argument("-s", "--structure", required=True)
    d3.add_argument("-l", type=_nonneg, default=0, help="isolated vertices to append")
    d3.add_argument("--planar-order", action="store_true")
    d3.add_argument("-o", "--output")
    d3.set_defaults(func=cmd_transform_deg3)
    cl = trsub.add_parser("closure")
    cl.add_argument("op", choices=("add-size", "remove-size", "shift-up", "shift-down"))
    cl.add_argument("-f", "--formula", required=True)
    cl.add_argument("--n", type=_positive)
    cl.add_argument("-o", "--output")
    cl.set_defaults(func=cmd_transform_closure)

    pl = sub.add_parser("planarity", help="test the Gaifman graph for planarity")
    pl.add_argument("-s", "--structure", required=True)
    pl.add_argument("--certificate", action="store_true")
    pl.set_defaults(func=cmd_planarity)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DOMAIN_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
