"""Compare the compiled and pure-Python evaluation kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--format text|json]

Workloads: checking axiom sets on generated structures (evaluation) and
exhaustive model enumeration (the enumerator's inner loop).  Each timing is
the best of ``--repeat`` runs after one warm-up run.
"""

from __future__ import annotations

import argparse
import json
import time

from fospectra._kernels import BACKENDS
from fospectra.axioms import phi_M_set, powers_set, tm_set
from fospectra.generators import powers_structure, spiral
from fospectra.machines.samples import two_sweeps
from fospectra.machines.tm import encode_trace, tm_search
from fospectra.spectrum import enumerate_models


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    """Name -> function of a backend name."""
    phi = phi_M_set()
    powers = powers_set()
    m = two_sweeps()
    trace = tm_search(m, "110", 20)
    tm_struct = encode_trace(trace)
    tm_axioms = tm_set(m, "110")

    def check(aset, structs):
        checkers = {}  # compiled once per backend, outside the timed region

        def run(backend):
            chk = checkers.get(backend) or checkers.setdefault(backend, aset.checker(backend))
            for s in structs:
                chk(s)
        return run

    def enum(aset, n):
        return lambda backend: enumerate_models(aset.formula, aset.vocab, n, backend=backend)

    return {
        "eval phi_M, spiral N=2..200": check(phi, [spiral(n) for n in range(2, 201)]),
        "eval powers, N=256": check(powers, [powers_structure(256)]),
        "eval tm axioms, two-sweeps trace": check(tm_axioms, [tm_struct]),
        "enumerate phi_M, N=4": enum(phi, 4),
        "enumerate phi_M, N=5": enum(phi, 5),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--skip-python-enum", action="store_true",
                   help="skip the slow pure-Python N=5 enumeration")
    args = p.parse_args(argv)
    backends = sorted(BACKENDS)
    rows = []
    for name, fn in workloads().items():
        row = {"workload": name}
        for b in backends:
            if b == "python" and args.skip_python_enum and "N=5" in name and "enumerate" in name:
                row[b] = None
                continue
            fn(b)  # warm-up: compile programs and caches
            row[b] = round(_best(lambda: fn(b), args.repeat), 4)
        if row.get("cython") and row.get("python"):
            row["speedup"] = round(row["python"] / row["cython"], 1)
        rows.append(row)
    if args.format == "json":
        print(json.dumps(rows, indent=2, sort_keys=True))
        return
    header = f"{'workload':36}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for row in rows:
        cells = "".join(f"{'-' if row[b] is None else f'{row[b]:.4f}s':>12}" for b in backends)
        speed = f"{row['speedup']}x" if "speedup" in row else "-"
        print(f"{row['workload']:36}{cells}{speed:>10}")


if __name__ == "__main__":
    main()
