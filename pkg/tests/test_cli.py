import io
import subprocess
import sys

import pytest

from conftest import GOLDEN
from dipalign.cli import EXIT_GUARD, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main
from dipalign.cover_solvers import CoverSolution
from dipalign.labeled_dag import line_dag, parse_dag


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def report(text):
    return dict(ln.split(": ", 1) for ln in text.splitlines() if ": " in ln)


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_align_examples(files):
    a = files("a.txt", "alphabet 01\n01\n")
    b = files("b.txt", "alphabet 01\n10\n")
    code, out = run("align", "--a", a, "--b", a)
    assert code == EXIT_OK and report(out)["distance"] == "0"
    code, out = run("align", "--a", a, "--b", b, "--witness")
    r = report(out)
    assert code == EXIT_OK and (r["distance"], r["score"]) == ("2", "-2")
    assert r["row_a"].replace("-", "") == "01" and r["row_b"].replace("-", "") == "10"
    bad = files("bad.txt", "alphabet 01\n012\n")
    assert run("align", "--a", bad, "--b", a)[0] == EXIT_INPUT


def test_align_scheme_options(files):
    a = files("a.txt", "alphabet 01dt\nt0\n")
    b = files("b.txt", "alphabet 01dt\nt\n")
    code, out = run("align", "--a", a, "--b", b, "--scheme", "corollary")
    assert code == EXIT_OK and report(out)["score"] == "-1"
    from dipalign.strings_core import ScoringScheme
    sch = files("s.txt", ScoringScheme.unit().format())
    x = files("x.txt", "alphabet 01\n0110\n")
    y = files("y.txt", "alphabet 01\n110\n")
    code, out = run("align", "--a", x, "--b", y, "--scheme", sch)
    assert code == EXIT_OK and report(out)["score"] == "-1"


def test_cover_align_examples(files):
    d1 = files("d1.dag", line_dag("01").to_text())
    d2 = files("d2.dag", line_dag("0").to_text())
    code, out = run("cover-align", "--d1", d1, "--d2", d1)
    assert code == EXIT_OK and CoverSolution.parse(out).value == 0
    code, out = run("cover-align", "--d1", d1, "--d2", d2)
    assert code == EXIT_OK and CoverSolution.parse(out).value == 1
    code, out = run("cover-align", "--d1", d2, "--d2", d1, "--no-cover-d2", "--engine", "dp")
    assert code == EXIT_OK and CoverSolution.parse(out).value == 0
    assert run("cover-align", "--d1", d1, "--d2", d2, "--engine", "dp")[0] == EXIT_INPUT
    code, out = run("cover-align", "--d1", d1, "--d2", d2, "--objective", "lex")
    assert code == EXIT_OK and CoverSolution.parse(out).value == (0, 1)


def test_cover_align_errors(files):
    wide = files("w.dag", "dag Sigma 3\nnode 0 \"0\"\nnode 1 \"1\"\nnode 2 \"0\"\n")
    d = files("d.dag", line_dag("01").to_text())
    assert run("cover-align", "--d1", wide, "--d2", d)[0] == EXIT_INPUT
    assert run("cover-align", "--d1", d, "--d2", d, "--guard", "1")[0] == EXIT_GUARD
    assert run("cover-align", "--d1", d, "--d2", d, "--objective", "median")[0] == EXIT_INPUT
    assert run("cover-align", "--d1", d)[0] == EXIT_INPUT


def test_encode_diploid(files):
    code, out = run("encode-diploid", "--alignment", str(GOLDEN / "alignment_ab.txt"))
    assert code == EXIT_OK and out == (GOLDEN / "encode_diploid_ab.dag").read_text()
    single = files("one.txt", "alphabet ab\na\nb\n")
    code, out = run("encode-diploid", "--alignment", single)
    assert code == EXIT_OK and len(parse_dag(out)) == 4
    assert run("encode-diploid", "--alignment", files("e.txt", ""))[0] == EXIT_INPUT
    two = files("two.txt", "alphabet ab\na\nb\n\nb\na\n")
    assert run("encode-diploid", "--alignment", two)[0] == EXIT_INPUT


def test_reduce_and_rerun(files, tmp_path):
    lcs = files("i.lcs", "alphabet 01\n01\n10\n")
    code, out = run("reduce", "--lcs", lcs, "--out", str(tmp_path / "b1"), "--seed", "7")
    r = report(out)
    assert code == EXIT_OK and r["tab_verified"] == "yes" and r["N"] == "4"
    code2, out2 = run("reduce", "--lcs", lcs, "--out", str(tmp_path / "b2"), "--seed", "7")
    assert out2 == out
    for name in ("a.dag", "b.dag", "meta.txt", "instance.lcs"):
        assert (tmp_path / "b1" / name).read_bytes() == (tmp_path / "b2" / name).read_bytes()


def test_reduce_errors(files, tmp_path):
    zeros = files("z.lcs", "alphabet 01\n00\n10\n")
    assert run("reduce", "--lcs", zeros, "--out", str(tmp_path / "z"))[0] == EXIT_INPUT
    big = files("big.lcs", "alphabet 01\n0101\n1010\n0110\n")
    code, out = run("reduce", "--lcs", big, "--out", str(tmp_path / "p"), "--scale", "paper")
    assert code == EXIT_GUARD and report(out)["N"] == "9"
    assert not (tmp_path / "p").exists()
    lcs = files("i.lcs", "alphabet 01\n01\n10\n")
    assert run("reduce", "--lcs", lcs, "--out", str(tmp_path / "x"),
               "--tab-length", "40", "--tab-k", "3")[0] == EXIT_INPUT


def test_verify_modes(files, tmp_path):
    lcs = files("i.lcs", "alphabet 01\n01\n10\n")
    bundle = str(tmp_path / "b")
    assert run("reduce", "--lcs", lcs, "--out", bundle, "--N", "1", "--seed", "7")[0] == EXIT_OK
    code, out = run("verify", "--bundle", bundle, "--mode", "lemma1")
    r = report(out)
    assert code == EXIT_OK and r["lemma1"] == "PASS" and r["lemma1.delta"] == "1"
    code, out = run("verify", "--bundle", bundle, "--mode", "corollary")
    assert code == EXIT_OK and report(out)["corollary"] == "PASS"
    # a single stage has no interval of n stages, so extraction fails honestly
    code, out = run("verify", "--bundle", bundle, "--mode", "lemma2")
    assert code == EXIT_VERIFY and report(out)["lemma2"] == "FAIL"
    code, out = run("verify", "--bundle", bundle, "--mode", "lemma2", "--guard", "10")
    assert code == EXIT_GUARD and report(out)["lemma2"] == "SKIPPED"


def test_verify_corrupted_bundle(files, tmp_path):
    lcs = files("i.lcs", "alphabet 01\n01\n10\n")
    bundle = tmp_path / "b"
    run("reduce", "--lcs", lcs, "--out", str(bundle), "--N", "1")
    text = (bundle / "a.dag").read_text()
    (bundle / "a.dag").write_text(text + "edge 0 999\n")
    assert run("verify", "--bundle", str(bundle), "--mode", "lemma1")[0] == EXIT_INPUT
    assert run("verify", "--bundle", str(tmp_path / "missing"))[0] == EXIT_INPUT


def test_usage_errors():
    assert run()[0] == EXIT_INPUT
    assert run("frobnicate")[0] == EXIT_INPUT


def test_module_entry_point(files):
    a = files("a.txt", "alphabet 01\n01\n")
    proc = subprocess.run([sys.executable, "-m", "dipalign", "align", "--a", a, "--b", a],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "distance: 0" in proc.stdout
