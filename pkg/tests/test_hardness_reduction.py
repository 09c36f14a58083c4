import itertools
import math

import pytest

from dipalign.cover_solvers import (SolverOptions, cover_read_pairs, evaluate_solution,
                                    iter_cover_pairs)
from dipalign.errors import (ImpossibleParameters, InputError, InstanceTooLarge,
                             NoCanonicalInterval, NotCommonSubsequence, ParameterMismatch)
from dipalign.hardness_reduction import (DESK, PAPER, ROLE_TAB, LcsInstance, build_gadget,
                                         build_instance, corollary_blocks, corollary_encode,
                                         corollary_scheme, corollary_verify, default_params,
                                         gen_tab, guard_size, lemma1_witness, lemma2_extract,
                                         meta_text, read_bundle, red_read, strand_paths,
                                         tab_adequate, verify_distinct_substrings, witness_costs,
                                         write_bundle)
from dipalign.labeled_dag import read, two_path_coverable
from dipalign.strings_core import GAP, NEG_INFINITY, common_subsequences, is_subsequence

FIXTURES = [("01", "10"), ("01", "01"), ("10", "01"), ("011", "110"), ("010", "101", "011"),
            ("01", "10", "01")]


def _small(strings, N=None, seed=0):
    inst = LcsInstance(strings)
    return build_instance(inst, default_params(inst, DESK, seed=seed, N=N))


def test_verify_distinct_substrings_examples():
    assert verify_distinct_substrings("0110", 2)
    assert not verify_distinct_substrings("0101", 2)
    assert not verify_distinct_substrings("00000", 2)
    assert verify_distinct_substrings("011", 3)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_gen_tab_examples(k):
    assert len(gen_tab(k, k, seed=3)) == k
    with pytest.raises(ImpossibleParameters):
        gen_tab(2 ** k + k, k)


def test_gen_tab_determinism_and_validity():
    t = gen_tab(12, 4, seed=1)
    assert verify_distinct_substrings(t, 4) and set(t) <= {"0", "1"}
    assert gen_tab(12, 4, seed=1) == t
    assert len({gen_tab(16, 6, seed=s) for s in range(10)}) > 1


def test_lcs_instance_validation():
    for bad in [("01",), ("01", "011"), ("00", "01"), ("0a", "10")]:
        with pytest.raises(InputError):
            LcsInstance(bad)
    inst = LcsInstance(("01", "10"))
    assert LcsInstance.parse(inst.to_text()) == inst


def test_default_params_examples():
    inst = LcsInstance(("01", "10"))
    p = default_params(inst, PAPER)
    assert (p.D, p.N, p.M) == (5, 4, 16)
    assert p.tab_k == math.ceil(2 * math.log2(p.tab_length))
    d = default_params(inst, DESK)
    assert (d.N, d.tab_length, d.tab_k) == (4, 8, 3)
    for ell in range(1, 6):
        s = "0" * (ell - 1) + "1" if ell > 1 else None
        if s is None:
            continue
        q = default_params(LcsInstance((s, s[::-1])), PAPER)
        assert q.M > 2 * ell and q.M >= 4 * ell * ell and q.D == 2 * ell + 1


def test_gadget_examples():
    g = build_gadget("01", 3)
    red, green = strand_paths(g.stage, {0})
    assert read(g.dag, green) == "0"
    assert read(g.dag, red) == "0001000" == red_read("01", {0}, 3)
    g1 = build_gadget("1", 1)
    red, green = strand_paths(g1.stage, set())
    assert read(g1.dag, red) == "10" and read(g1.dag, green) == ""
    assert two_path_coverable(g.dag) and two_path_coverable(g1.dag)


@pytest.mark.parametrize("si", ["0", "1", "01", "10", "011", "0110", "1010"])
@pytest.mark.parametrize("D", [1, 2, 3])
def test_gadget_completeness(si, D):
    g = build_gadget(si, D)
    pairs = list(iter_cover_pairs(g.dag, disjoint=True))
    xs = set(g.stage.x)
    for size in range(len(si) + 1):
        for greens in itertools.combinations(range(len(si)), size):
            greens = set(greens)
            want_g = "".join(si[j] for j in sorted(greens))
            want_r = red_read(si, greens, D)
            hits = [(r, gr) for r, gr in pairs
                    if read(g.dag, r) == want_r and read(g.dag, gr) == want_g
                    and {j for j, x in enumerate(g.stage.x) if x in gr} == greens]
            assert len(hits) == 1
            assert set(hits[0][1]) & xs == {g.stage.x[j] for j in greens}


@pytest.mark.parametrize("strings", FIXTURES)
def test_structure(strings):
    ri = _small(strings, N=3)
    N, n = ri.params.N, ri.lcs.n
    for roles in (ri.roles_a, ri.roles_b):
        assert roles.count(ROLE_TAB) == 2 * N + 1
    assert len(ri.tabs_a[-1]) == 1 and len(ri.tabs_b[0]) == 1
    assert [s.residue for s in ri.stages_a] == [i % n for i in range(1, N + 1)]
    assert two_path_coverable(ri.dag_a) and two_path_coverable(ri.dag_b)


def test_residues_cover_every_class_n_times():
    ri = _small(("01", "10"))
    res = [s.residue for s in ri.stages_a]
    assert len(res) == 4 and all(res.count(r) == 2 for r in range(2))


def test_parameter_mismatch():
    inst = LcsInstance(("01", "10"))
    other = default_params(LcsInstance(("011", "110")))
    with pytest.raises(ParameterMismatch):
        build_instance(inst, other)
    with pytest.raises(ParameterMismatch):
        build_instance(inst, default_params(inst), tab="0")


@pytest.mark.parametrize("strings", FIXTURES)
def test_lemma1_every_common_subsequence(strings):
    ri = _small(strings, N=len(strings))
    ell = ri.lcs.ell
    for sp in common_subsequences(list(strings)):
        w = lemma1_witness(ri, sp)
        assert w.delta == ell - len(sp)
        assert witness_costs(ri, w) == (0, 2 * w.delta)
        da, _ = ri.expanded("a")
        db, _ = ri.expanded("b")
        opts = SolverOptions(disjoint_d1=True, disjoint_d2=True)
        assert evaluate_solution(da, db, w.as_solution(), opts) == 2 * w.delta
        assert lemma2_extract(ri, w.as_solution()) == sp


def test_lemma1_rejects_non_subsequence():
    ri = _small(("01", "10"), N=1)
    with pytest.raises(NotCommonSubsequence):
        lemma1_witness(ri, "01")


def test_lemma2_needs_an_interval():
    # with N < n there is no window of n consecutive stages
    ri = _small(("01", "10", "01"), N=2)
    w = lemma1_witness(ri, "")
    with pytest.raises(NoCanonicalInterval):
        lemma2_extract(ri, w.as_solution())


def test_lemma2_result_is_common_subsequence():
    ri = _small(("01", "01"), N=2)
    w = lemma1_witness(ri, "01")
    got = lemma2_extract(ri, w.as_solution())
    assert all(is_subsequence(got, s) for s in ri.lcs.strings)


def test_tab_adequacy_flag():
    ri = _small(("01", "10"), N=1)
    assert not tab_adequate(ri)
    inst = ri.lcs
    p = default_params(inst, DESK, N=4, tab_length=9 * 16, tab_k=12)
    assert tab_adequate(build_instance(inst, p))


def test_corollary_scheme_table():
    D = 5
    sc = corollary_scheme(D)
    assert sc("0", "1") == -1 and sc("t", "0") == NEG_INFINITY and sc("d", GAP) == -D
    syms = "01dt" + GAP
    for a in syms:
        for b in syms:
            v = sc(a, b)
            if a == b:
                assert v == 0
            elif "t" in (a, b):
                assert v == NEG_INFINITY
            elif "d" in (a, b):
                assert v == -D
            else:
                assert v == -1
            assert v == sc(b, a)


def test_corollary_blocks_cases():
    ri = _small(("01", "10"), N=1)
    blocks_a = corollary_blocks(ri, "a")
    kinds = {tuple(b) for b in blocks_a}
    assert (("t", "t"),) in kinds
    assert (("0", GAP),) in kinds or (("1", GAP),) in kinds
    assert (("d", GAP),) in kinds
    assert (("t", GAP),) in kinds
    assert blocks_a[1] == [("0", "0"), ("1", "1")]  # head expands per character
    assert blocks_a[0] == [] and blocks_a[-1] == []
    tail_block = corollary_blocks(ri, "b")[-2]
    assert tail_block == [("1", "1"), ("0", "0")]


def test_corollary_encode_smallest():
    ri = _small(("01", "10"), N=1)
    dip = corollary_encode(ri)
    assert (dip.first.row_a, dip.first.row_b) == ("01t1d0dt", "01t-----")
    assert (dip.second.row_a, dip.second.row_b) == ("t1d0dt10", "-----t10")


def test_corollary_verify_upper_bound():
    for strings in (("01", "10"), ("01", "01")):
        rep = corollary_verify(_small(strings, N=1))
        assert rep.upper_bound_holds
        assert rep.bound == 2 * (2 - rep.lcs_length)


def test_bundle_round_trip(tmp_path):
    ri = _small(("011", "110"), N=2, seed=4)
    write_bundle(ri, tmp_path / "b")
    back = read_bundle(tmp_path / "b")
    assert back == ri and meta_text(back) == meta_text(ri)
    write_bundle(_small(("011", "110"), N=2, seed=4), tmp_path / "c")
    for name in ("a.dag", "b.dag", "meta.txt", "instance.lcs"):
        assert (tmp_path / "b" / name).read_bytes() == (tmp_path / "c" / name).read_bytes()


def test_bundle_corruption(tmp_path):
    ri = _small(("01", "10"), N=1)
    write_bundle(ri, tmp_path)
    meta = (tmp_path / "meta.txt").read_text()
    (tmp_path / "meta.txt").write_text(meta.replace("col 1 head", "col 1 tail"))
    with pytest.raises(InputError):
        read_bundle(tmp_path)
    (tmp_path / "meta.txt").write_text(meta)
    (tmp_path / "a.dag").unlink()
    with pytest.raises(InputError):
        read_bundle(tmp_path)


def test_size_guard():
    inst = LcsInstance(("0101", "1010", "0110"))
    with pytest.raises(InstanceTooLarge):
        guard_size(default_params(inst, PAPER), 1_000_000)
    guard_size(default_params(inst, DESK), 1_000_000)


def test_cover_read_pairs_on_expanded_reduction():
    ri = _small(("01", "10"), N=1)
    da, _ = ri.expanded("a")
    pairs = cover_read_pairs(da, disjoint=True)
    w = lemma1_witness(ri, "0")
    assert (read(da, w.a_red), read(da, w.a_green)) in pairs
