import json
from pathlib import Path

import pytest

from fospectra.cli import main
from fospectra.structures import deserialize

ROOT = Path(__file__).resolve().parents[1]
FIB_QM = str(ROOT / "machines" / "fib.qm")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_then_check(tmp_path, capsys):
    f = tmp_path / "s.fm"
    assert run(capsys, "gen", "spiral", 8, "-o", f)[0] == 0
    code, out, _ = run(capsys, "check", "-s", f, "-a", "phi_M")
    assert (code, out) == (0, "true\n")
    code, out, _ = run(capsys, "check", "-s", f, "-a", "powers")
    assert code == 1  # spiral has no P


def test_check_reports_failing_conjuncts(tmp_path, capsys):
    f = tmp_path / "p.fm"
    f.write_text("structure N=4\nunary P: 1 2 3\npif inc: 1->2 2->3 3->4\npif dbl: 1->2 2->4\n")
    code, out, _ = run(capsys, "check", "-s", f, "-a", "powers")
    assert code == 0 and out.splitlines()[0] == "false"
    assert "fails P-recursion" in out
    code, out, _ = run(capsys, "--format", "json", "check", "-s", f, "-a", "powers")
    assert json.loads(out)["holds"] is False


def test_queue_run(capsys):
    code, out, _ = run(capsys, "queue", "run", FIB_QM, "--max-len", 60)
    assert code == 0 and out == "3 5 8 13 21 34 55\n"


def test_spectrum_powers(tmp_path, capsys):
    fol = tmp_path / "powers.fol"
    assert run(capsys, "axioms", "powers", "-o", fol)[0] == 0
    wdir = tmp_path / "w"
    code, out, _ = run(capsys, "spectrum", "--formula", fol, "--range", "1..33",
                       "--mode", "all", "--witness-dir", wdir)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n=1 nonmember"
    members = [int(l.split()[0][2:]) for l in lines if " member" in l]
    assert members == [2, 4, 8, 16, 32]
    assert f"n=8 member witness={wdir / 'n8.fm'}" in lines
    assert deserialize((wdir / "n8.fm").read_text()).size == 8


def test_spectrum_output_is_stable(capsys):
    args = ("--format", "json", "spectrum", "--family", "composite", "--range", "2..12",
            "--jobs", 3)
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second and first[0] == 0
    recs = [json.loads(l) for l in first[1].splitlines()]
    assert [r["n"] for r in recs] == list(range(2, 13))


def test_spectrum_brute_engine(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "phi_M", "--range", "1..4", "--engine", "brute")
    assert code == 0 and out.split() == ["n=1", "nonmember", "n=2", "member", "n=3", "member",
                                         "n=4", "member"]


def test_tm_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "tm", "search", "builtin:scan-right")
    assert code == 0 and out.splitlines()[:3] == ["accept", "time 3", "space 3"]
    t = tmp_path / "t.fm"
    code, out, _ = run(capsys, "--format", "json", "tm", "encode", "builtin:two-sweeps",
                       "--exact-four", "-o", t)
    rec = json.loads(out)
    assert rec["size"] == rec["bound"]
    code, out, _ = run(capsys, "check", "-s", t, "-a", "tm", "--machine", "builtin:two-sweeps",
                       "--exact-four")
    assert out == "true\n"
    code, out, _ = run(capsys, "planarity", "-s", t)
    assert out == "planar\n"


def test_queue_encode(tmp_path, capsys):
    q = tmp_path / "q.fm"
    code, out, _ = run(capsys, "queue", "encode", FIB_QM, "--length", 21, "-o", q)
    assert code == 0 and "tape AAbAbaAbaabAbaababaAA" in out
    code, out, _ = run(capsys, "check", "-s", q, "-a", "queue", "--machine", FIB_QM, "--word", "A")
    assert out == "true\n"


def test_hanf_census(tmp_path, capsys):
    a, b = tmp_path / "a.fm", tmp_path / "b.fm"
    run(capsys, "gen", "cycle", 12, "-o", a)
    b.write_text("structure N=12\npif E0: 1->2 2->3 3->4 4->5 5->6 6->1 "
                 "7->8 8->9 9->10 10->11 11->12 12->7\n")
    code, out, _ = run(capsys, "hanf-census", "-s", a, "-r", 1, "-M", 20, "-d", 2, "--against", b)
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("type ") and lines[0].endswith("count 12")
    assert lines[-1] == "equivalent true"
    code, out, _ = run(capsys, "hanf-census", "-s", a, "-r", 3, "-M", 20, "-d", 2, "--against", b)
    assert out.splitlines()[-1] == "equivalent false"


def test_transforms(tmp_path, capsys):
    s = tmp_path / "s.fm"
    run(capsys, "gen", "powers", 8, "-o", s)
    g = tmp_path / "g.fm"
    assert run(capsys, "transform", "deg3", "-s", s, "--planar-order", "-l", 2, "-o", g)[0] == 0
    assert deserialize(g.read_text()).size == 2 * 2 * 8 + 2
    assert run(capsys, "planarity", "-s", g)[1] == "planar\n"
    toy = tmp_path / "toy.fol"
    toy.write_text("pif: f\nforall x. def(f(x)) & f(x) != x & f(f(x)) = x\n")
    for op in ("add-size", "remove-size", "shift-up", "shift-down"):
        out_f = tmp_path / f"{op}.fol"
        extra = ("--n", 3) if "size" in op else ()
        assert run(capsys, "transform", "closure", op, "-f", toy, *extra, "-o", out_f)[0] == 0
    code, out, _ = run(capsys, "spectrum", "--formula", tmp_path / "shift-up.fol",
                       "--range", "1..5", "--engine", "brute")
    assert [l.split()[0] for l in out.splitlines() if " member" in l] == ["n=3", "n=5"]


def test_planarity_certificate(tmp_path, capsys):
    f = tmp_path / "k5.fm"
    f.write_text("structure N=5\npif a: 1->2 2->3 3->4 4->5 5->1\npif b: 1->3 3->5 5->2 2->4 4->1\n")
    code, out, _ = run(capsys, "planarity", "-s", f, "--certificate")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "nonplanar" and len(lines) == 11


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "check", "-s", tmp_path / "missing.fm", "-a", "phi_M")[0] == 1
    bad = tmp_path / "bad.fol"
    bad.write_text("forall x. (Q(x)")
    code, _, err = run(capsys, "spectrum", "--formula", bad, "--range", "1..2")
    assert code == 1 and err.startswith("error:")
    assert run(capsys, "axioms", "tm")[0] == 1
    assert run(capsys, "tm", "search", "builtin:nope")[0] == 1
    assert run(capsys, "queue", "run", "builtin:two-sweeps", "--max-len", 5)[0] == 1
    with pytest.raises(SystemExit) as e:
        main(["spectrum", "--family", "phi_M", "--range", "5..2"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_gen_random_uses_seed(capsys):
    a = run(capsys, "--seed", 5, "gen", "random", 6)
    b = run(capsys, "--seed", 5, "gen", "random", 6)
    c = run(capsys, "--seed", 6, "gen", "random", 6)
    assert a == b and a != c
