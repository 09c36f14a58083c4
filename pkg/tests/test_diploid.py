import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dipalign.diploid import (DiploidInstance, PairwiseAlignment, all_masks, apply_mask,
                              mask_crossovers, mask_from_alignment, objective,
                              reachable_recombinations, recombination_closure_bfs, recombine,
                              remove_gaps, solve_diploid_bruteforce, solve_diploid_naive,
                              validate_alignment)
from dipalign.errors import IndexOutOfRange, InstanceTooLarge, LengthMismatch
from dipalign.strings_core import ScoringScheme

X = PairwiseAlignment("ac-", "-cg")
BIN = ScoringScheme.unit()


@st.composite
def alignments(draw, max_len=6):
    L = draw(st.integers(0, max_len))
    cols = draw(st.lists(st.sampled_from(["00", "01", "10", "11", "0-", "-0", "1-", "-1"]),
                         min_size=L, max_size=L))
    return PairwiseAlignment("".join(c[0] for c in cols), "".join(c[1] for c in cols))


def test_recombine_examples():
    assert recombine(X, 1) == PairwiseAlignment("acg", "-c-")
    assert recombine(X, 3) == X
    assert recombine(X, 0) == X.swapped
    with pytest.raises(IndexOutOfRange):
        recombine(X, 4)


def test_remove_gaps():
    assert remove_gaps("-a-b-") == "ab"
    assert remove_gaps("---") == ""
    assert remove_gaps("01") == "01"


def test_apply_mask_examples():
    assert apply_mask(X, [False] * 3) == X
    assert apply_mask(X, [True] * 3) == recombine(X, 0)
    assert apply_mask(X, [False, True, True]) == recombine(X, 1)
    with pytest.raises(LengthMismatch):
        apply_mask(X, [True])


def test_reachable_examples():
    empty = PairwiseAlignment("", "")
    assert reachable_recombinations(empty) == {empty}
    assert len(reachable_recombinations(PairwiseAlignment("a", "b"))) == 2
    with pytest.raises(InstanceTooLarge):
        reachable_recombinations(PairwiseAlignment("0" * 17, "1" * 17))


def test_validate_alignment():
    assert validate_alignment(PairwiseAlignment("a-", "-b"), "a", "b")
    assert not validate_alignment(PairwiseAlignment("ab", "a-"), "ab", "ab")
    assert validate_alignment(X, "ac", "cg")


@given(alignments(), st.integers(0, 6))
def test_recombine_involution(a, i):
    i = min(i, len(a))
    assert recombine(recombine(a, i), i) == a


@given(alignments())
def test_column_multiset_conserved(a):
    for m in all_masks(len(a)):
        b = apply_mask(a, m)
        for (x, y), (p, q) in zip(zip(a.row_a, a.row_b), zip(b.row_a, b.row_b)):
            assert {x, y} == {p, q}


@given(alignments())
def test_mask_crossovers_realise_mask(a):
    for m in all_masks(len(a)):
        b = a
        for point in mask_crossovers(m):
            b = recombine(b, point)
        assert b == apply_mask(a, m)
        assert apply_mask(a, mask_from_alignment(a, b)) == b


@given(alignments(max_len=5))
def test_closure_equals_mask_image(a):
    image = {apply_mask(a, m) for m in all_masks(len(a))}
    assert reachable_recombinations(a) == image == recombination_closure_bfs(a)


def test_diploid_identity_instance():
    a = PairwiseAlignment("0110", "1001")
    sol = solve_diploid_bruteforce(DiploidInstance(a, a, BIN))
    assert sol.value == 0
    assert sol.mask_first == sol.mask_second == (False,) * 4


def test_diploid_crossed_instance():
    a = PairwiseAlignment("0011", "0101")
    inst = DiploidInstance(a, a.swapped, BIN)
    sol = solve_diploid_bruteforce(inst)
    assert sol.value == 0
    assert objective(inst, sol.mask_first, sol.mask_second) == 0
    # columns 0 and 3 hold equal symbols, so the least optimal mask leaves them alone
    assert (sol.mask_first, sol.mask_second) == ((False,) * 4, (False, True, True, False))


def test_diploid_against_closure_oracle():
    rng = random.Random(11)
    for _ in range(25):
        def rand_alignment():
            L = rng.randint(1, 4)
            cols = [rng.choice(["00", "01", "10", "11", "0-", "-1", "1-"]) for _ in range(L)]
            return PairwiseAlignment("".join(c[0] for c in cols), "".join(c[1] for c in cols))
        inst = DiploidInstance(rand_alignment(), rand_alignment(), BIN)
        sol = solve_diploid_bruteforce(inst)
        assert sol.value == solve_diploid_naive(inst)
        assert objective(inst, sol.mask_first, sol.mask_second) == sol.value
        # least witness among all optimal mask pairs
        opt = [(mf, ms) for mf in all_masks(len(inst.first)) for ms in all_masks(len(inst.second))
               if objective(inst, mf, ms) == sol.value]
        assert (sol.mask_first, sol.mask_second) == min(opt)


def test_row_exchange_invariance():
    rng = random.Random(2)
    for _ in range(15):
        cols = [rng.choice(["00", "01", "1-", "-0"]) for _ in range(3)]
        a = PairwiseAlignment("".join(c[0] for c in cols), "".join(c[1] for c in cols))
        b = PairwiseAlignment("01-", "1-0")
        v = solve_diploid_bruteforce(DiploidInstance(a, b, BIN)).value
        assert solve_diploid_bruteforce(DiploidInstance(a.swapped, b, BIN)).value == v


def test_diploid_guard():
    a = PairwiseAlignment("0" * 13, "1" * 13)
    with pytest.raises(InstanceTooLarge):
        solve_diploid_bruteforce(DiploidInstance(a, a, BIN))
    flat = PairwiseAlignment("0" * 13, "0" * 13)
    with pytest.warns(UserWarning):
        assert solve_diploid_bruteforce(DiploidInstance(flat, flat, BIN), guard=13).value == 0


def test_invalid_symbols_rejected():
    with pytest.raises(ValueError):
        DiploidInstance(PairwiseAlignment("2", "0"), X, BIN)
