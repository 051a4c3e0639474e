"""Acceptance criteria 1-9, one test each.

Each test records its outcome so the terminal summary prints one
``criterion k: pass|fail`` line per criterion.  Run standalone with
``python3 tests/test_acceptance.py`` for the same lines without pytest.
"""

import itertools
import random
import time

import networkx as nx

from fospectra.axioms import (
    binary_set, composite_set, fib_set, phi_M_set, powers_set, tm_set,
)
from fospectra.generators import (
    INC, binary_rep_structure, fibonacci_structure, forcing_grid, forcing_values, layer_index,
    multiplication_structure, powers_structure, reconstruct_value, spiral,
)
from fospectra.hanf import ball, ball_bound, hanf_equivalent, type_census
from fospectra.logic import (
    And, App, Checker, Defined, Eq, Exists, ForAll, Not, Or, Var, Vocabulary, add_size,
    delete_element_transform, disj, remove_size, shift_up,
)
from fospectra.machines.queue import encode_queue_trace, iter_queue_runs, queue_run
from fospectra.machines.samples import SAMPLE_MACHINES, fibonacci_queue_machine
from fospectra.machines.tm import encode_trace_stats, iter_accepting_traces
from fospectra.planarity import planarity
from fospectra.spectrum import (
    brute_spectrum, decode_degree3, enumerate_models, pif_to_degree3, spectrum_range,
)
from fospectra.structures import (
    FiniteStructure, Graph, cycle_structure, disjoint_union, graph_to_structure,
    isomorphic, max_degree, random_structure,
)

try:
    from conftest import ACCEPTANCE
except ImportError:  # standalone run
    ACCEPTANCE = {}

SEED = 1729


def record(k):
    """Decorator: store pass/fail for criterion ``k`` and re-raise failures."""
    def wrap(fn):
        def test():
            try:
                fn()
            except BaseException:
                ACCEPTANCE[k] = "fail"
                raise
            ACCEPTANCE[k] = "pass"
        test.__name__ = fn.__name__
        test.__doc__ = fn.__doc__
        test.criterion = k
        return test
    return wrap


# --- 1 ----------------------------------------------------------------------------------

@record(1)
def test_criterion_1_spiral_uniqueness():
    """Every 2-PIF model of phi_M of size 5 has inc-reduct isomorphic to the spiral's."""
    a = phi_M_set()
    t0 = time.perf_counter()
    count, models, nodes = enumerate_models(a.formula, a.vocab, 5)
    elapsed = time.perf_counter() - t0
    inc_voc = Vocabulary((), (INC,), ())
    target = spiral(5).reduct(inc_voc)
    assert count == len(models) == 120  # 5! labellings of one structure
    assert all(isomorphic(m.reduct(inc_voc), target) for m in models)
    assert all(isomorphic(m, spiral(5)) for m in models)
    assert elapsed < 60


# --- 2 ----------------------------------------------------------------------------------

FIB = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89}


def _only_failures(chk, s, allowed):
    return set(chk.failures(s)) <= set(allowed)


@record(2)
def test_criterion_2_example_spectra():
    t0 = time.perf_counter()
    checks = {k: s.checker() for k, s in (
        ("phi_M", phi_M_set()), ("powers", powers_set()), ("fib", fib_set()),
        ("fib-planar", fib_set(True)), ("binary", binary_set()), ("composite", composite_set()))}
    for n in range(2, 129):
        assert checks["phi_M"](spiral(n))
        assert checks["binary"](binary_rep_structure(n))
        is_pow = n & (n - 1) == 0
        assert checks["powers"](powers_structure(n)) == is_pow
        assert _only_failures(checks["powers"], powers_structure(n), ["P-of-N"])
        for fam, planar in (("fib", False), ("fib-planar", True)):
            s = fibonacci_structure(n, planar)
            assert checks[fam](s) == (n in FIB)
            assert _only_failures(checks[fam], s, ["Phi-of-N"])
        composite_ok = [c for c in range(2, n) if n % c == 0]
        for c in composite_ok:
            assert checks["composite"](multiplication_structure(n, c))
    assert time.perf_counter() - t0 < 10

    budget = 10 ** 6
    expected = {"powers": [2, 4, 8], "composite": [4, 6, 8, 9, 10], "fib-planar": [2, 3, 5, 8]}
    sets = {"powers": powers_set(), "composite": composite_set(), "fib-planar": fib_set(True)}
    for fam, members in expected.items():
        a = sets[fam]
        res = spectrum_range(a.formula, a.vocab, 2, 10, budget=budget)
        assert not res.unknown
        assert res.members == members
        # cross-check: witnesses are models, generator outputs witness membership
        for n, w in res.witnesses.items():
            assert a.checker()(w)
    # exact cross-check of the search against the brute-force enumerator where it is cheap
    p = powers_set()
    assert sorted(brute_spectrum(p.formula, p.vocab, range(2, 6))) == [2, 4]


# --- 3 ----------------------------------------------------------------------------------

def _all_suite_traces():
    for name, (factory, word) in sorted(SAMPLE_MACHINES.items()):
        for t in iter_accepting_traces(factory(), word, 50):
            yield t


@record(3)
def test_criterion_3_planarity():
    for n in range(2, 257):
        for s in (spiral(n), powers_structure(n), fibonacci_structure(n, True)):
            assert planarity(s).planar, n
    for t in _all_suite_traces():
        for exact in (False, True):
            assert planarity(encode_trace_stats(t, exact_four=exact).structure).planar
    for tr in iter_queue_runs(fibonacci_queue_machine(), "A", 60):
        assert planarity(encode_queue_trace(tr)).planar


# --- 4 ----------------------------------------------------------------------------------

@record(4)
def test_criterion_4_encoding_accounting():
    machines = 0
    for name, (factory, word) in sorted(SAMPLE_MACHINES.items()):
        m = factory()
        traces = list(iter_accepting_traces(m, word, 50))
        if not traces:
            continue
        machines += 1
        checker = {e: tm_set(m, word, exact_four=e).checker() for e in (False, True)}
        for t in traces:
            res = encode_trace_stats(t)
            bound = t.space + 4 * t.time + 2 * res.pad
            assert res.structure.size <= bound
            assert res.potentials[0] == 2
            assert all(c <= 4 for c in res.step_costs())
            exact = encode_trace_stats(t, exact_four=True)
            assert exact.structure.size == bound
            for e, s in ((False, res.structure), (True, exact.structure)):
                chk = checker[e]
                assert chk(s)
                for r in s.vocab.unary:
                    for x in s.elements:
                        unary = dict(s.unary)
                        unary[r] = set(unary[r]) ^ {x}
                        assert not chk(FiniteStructure(s.size, s.vocab, unary, s.pif, {})), (r, x)
    assert machines >= 3


# --- 5 ----------------------------------------------------------------------------------

@record(5)
def test_criterion_5_queue_machine():
    t0 = time.perf_counter()
    res = queue_run(fibonacci_queue_machine(), "A", 60)
    elapsed = time.perf_counter() - t0
    tapes = [tr for tr in iter_queue_runs(fibonacci_queue_machine(), "A", 21) if tr.length == 21]
    target = "AAbAbaAbaabAbaababaAA"
    assert any(tr.tape == target for tr in tapes)
    a_positions = [i for i, c in enumerate(target, 1) if c == "A"][:-1]
    assert a_positions == [1, 2, 4, 7, 12, 20]
    assert elapsed < 10
    # stated: exactly the Fibonacci numbers in [1, 60]
    missing = sorted({k for k in FIB if k <= 60} - set(res.lengths))
    assert set(res.lengths) == {k for k in FIB if k <= 60}, f"lengths {missing} not reachable"


# --- 6 ----------------------------------------------------------------------------------

def _adjacent(x, y, pifs):
    return disj(*[Or((Eq(App(f, x), y), Eq(App(f, y), x))) for f in pifs])


def _depth2_sentences(pifs):
    x, y = Var("x"), Var("y")
    atoms = [Eq(x, y), _adjacent(x, y, pifs)]
    atoms += [Eq(App(f, x), y) for f in pifs] + [Defined(App(f, x)) for f in pifs]
    lits = atoms + [Not(a) for a in atoms]
    bodies = lits + [And((a, b)) for a, b in itertools.combinations(lits, 2)]
    out = []
    for body in bodies:
        for q1, q2 in itertools.product((Exists, ForAll), repeat=2):
            out.append(q1("x", q2("y", body)))
    return out


def _small_degree3_structures(rng, copies=3, ncolors=5):
    """Atlas graphs with at most 6 vertices and degree at most 3, each also
    under ``copies`` random relabellings (which change the greedy edge
    colouring, hence the PIF structure, but not the census class)."""
    out = []
    for g in nx.graph_atlas_g()[1:]:
        if g.number_of_nodes() > 6 or (g.number_of_edges() and max(d for _, d in g.degree()) > 3):
            continue
        g = nx.convert_node_labels_to_integers(g, 1)
        for k in range(copies + 1):
            perm = list(g.nodes)
            if k:
                rng.shuffle(perm)
            h = nx.relabel_nodes(g, dict(zip(g.nodes, perm)))
            out.append(graph_to_structure(Graph.from_networkx(h), ncolors=ncolors))
    return out


@record(6)
def test_criterion_6_hanf():
    c6, c12 = cycle_structure(6), cycle_structure(12)
    two = disjoint_union(c6, c6)
    assert hanf_equivalent(two, c12, 1, 20, 2)
    assert not hanf_equivalent(two, c12, 3, 20, 2)

    # exhaustive implication check: equal (4, 6)-censuses force agreement on
    # every depth-2 sentence of the family
    rng = random.Random(SEED)
    structs = _small_degree3_structures(rng)
    voc = structs[0].vocab
    sentences = _depth2_sentences(voc.pifs)
    chk = Checker(sentences, voc)
    groups = {}
    for s in structs:
        groups.setdefault(type_census(s, 4, 6, 3), []).append(s)
    counterexamples = pairs = 0
    for members in groups.values():
        values = {tuple(chk.values(s)) for s in members}
        counterexamples += len(values) - 1
        pairs += len(members) * (len(members) - 1) // 2
    assert pairs > 0 and counterexamples == 0

    # stated ball-size bound on random degree-3 graphs
    violations = 0
    for _ in range(10 ** 4):
        n = rng.randint(8, 40)
        g = nx.random_regular_graph(3, n if n % 2 == 0 else n + 1, seed=rng.randrange(2 ** 31))
        g.remove_edges_from(rng.sample(sorted(g.edges()), rng.randint(0, g.number_of_edges() // 3)))
        s = graph_to_structure(Graph.from_networkx(nx.convert_node_labels_to_integers(g, 1)))
        r = rng.randint(1, 3)
        v = rng.randint(1, s.size)
        if len(ball(s, v, r)) > ball_bound(3, r):
            violations += 1
    assert violations == 0, f"{violations} of 10000 balls exceed 1 + d(d-1)^(r-1)"


# --- 7 ----------------------------------------------------------------------------------

def _random_planar_structures(count, rng):
    voc = Vocabulary(("U",), ("f", "g"), ())
    out = []
    while len(out) < count:
        s = random_structure(voc, rng.randint(2, 14), rng, density=rng.uniform(0.3, 1.0))
        if planarity(s).planar:
            out.append(s)
    return out


@record(7)
def test_criterion_7_gadget():
    rng = random.Random(SEED)
    for s in _random_planar_structures(100, rng):
        d = len(s.vocab.pifs)
        l = rng.randint(0, 4)
        for order in (False, True):
            g = pif_to_degree3(s, l, planar_order=order)
            assert g.n == 2 * d * s.size + l
            assert max_degree(g.graph) <= 3
            assert decode_degree3(g, s.vocab.pifs, s.vocab.unary) == s
        assert planarity(pif_to_degree3(s, l, planar_order=True).graph).planar


# --- 8 ----------------------------------------------------------------------------------

@record(8)
def test_criterion_8_forcing_grid():
    t0 = time.perf_counter()
    for d in (11, 16):
        for n in range(8, 513):
            v, f, top = forcing_values(n, d)
            _, layer = layer_index(n)
            assert sum(v[x] for x in v if layer[x] == top) == n + 1
            assert all(v[x] in (0, 1) for x in v if layer[x] < top)
            _, view = forcing_grid(n, d)
            assert reconstruct_value(view, d) == n + 1
            assert view.width * view.height <= n
    assert time.perf_counter() - t0 < 5


# --- 9 ----------------------------------------------------------------------------------

TOY_VOCAB = Vocabulary((), ("f",), ())
# fixed-point-free involutions exist exactly at even sizes
TOY = ForAll("x", And((Defined(App("f", Var("x"))), Not(Eq(App("f", Var("x")), Var("x"))),
                       Eq(App("f", App("f", Var("x"))), Var("x")))))


@record(9)
def test_criterion_9_closure():
    sizes = range(1, 5)
    S = brute_spectrum(TOY, TOY_VOCAB, range(1, 6))
    assert S == {2, 4}
    for n in sizes:
        assert brute_spectrum(add_size(TOY, n), TOY_VOCAB, sizes) == ({*S, n} & set(sizes))
        assert brute_spectrum(remove_size(TOY, n), TOY_VOCAB, sizes) == ((S - {n}) & set(sizes))
    up, up_voc = shift_up(TOY, TOY_VOCAB)
    assert brute_spectrum(up, up_voc, sizes) == {k + 1 for k in S} & set(sizes)
    down, down_voc = delete_element_transform(TOY, TOY_VOCAB)
    assert brute_spectrum(down, down_voc, sizes) == {k - 1 for k in S if k > 1} & set(sizes)


CRITERIA = [test_criterion_1_spiral_uniqueness, test_criterion_2_example_spectra,
            test_criterion_3_planarity, test_criterion_4_encoding_accounting,
            test_criterion_5_queue_machine, test_criterion_6_hanf, test_criterion_7_gadget,
            test_criterion_8_forcing_grid, test_criterion_9_closure]


if __name__ == "__main__":
    for fn in CRITERIA:
        try:
            fn()
            print(f"criterion {fn.criterion}: pass")
        except AssertionError as e:
            print(f"criterion {fn.criterion}: fail ({e})")
