"""Pairwise alignments as diploid chromosomes, recombination, and an exact
exhaustive solver for diploid alignment under arbitrary scoring."""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, InputError, InstanceTooLarge, LengthMismatch
from .strings_core import GAP, NEG_INFINITY, ScoringScheme, global_alignment_score, score_matrix

RECOMBINATION_GUARD = 16
DIPLOID_GUARD = 12


@dataclass(frozen=True)
class PairwiseAlignment:
    """Two gapped rows of equal length ``L``."""

    row_a: str
    row_b: str

    def __post_init__(self):
        if len(self.row_a) != len(self.row_b):
            raise LengthMismatch(f"rows have lengths {len(self.row_a)} and {len(self.row_b)}")

    def __len__(self):
        return len(self.row_a)

    @property
    def swapped(self) -> "PairwiseAlignment":
        return PairwiseAlignment(self.row_b, self.row_a)

    def reads(self) -> tuple[str, str]:
        return remove_gaps(self.row_a), remove_gaps(self.row_b)


@dataclass(frozen=True)
class DiploidInstance:
    first: PairwiseAlignment
    second: PairwiseAlignment
    scheme: ScoringScheme

    def __post_init__(self):
        for a in (self.first, self.second):
            self.scheme.alphabet.validate(a.row_a, allow_gap=True)
            self.scheme.alphabet.validate(a.row_b, allow_gap=True)


@dataclass(frozen=True)
class DiploidSolution:
    mask_first: tuple[bool, ...]
    mask_second: tuple[bool, ...]
    value: object


def remove_gaps(row: str) -> str:
    return row.replace(GAP, "")


def recombine(a: PairwiseAlignment, i: int) -> PairwiseAlignment:
    """Exchange the suffixes of the two rows after column ``i`` (0 <= i <= L)."""
    if not 0 <= i <= len(a):
        raise IndexOutOfRange(f"crossover {i} outside 0..{len(a)}")
    return PairwiseAlignment(a.row_a[:i] + a.row_b[i:], a.row_b[:i] + a.row_a[i:])


def apply_mask(a: PairwiseAlignment, mask) -> PairwiseAlignment:
    """Swap column ``i`` between the rows exactly where ``mask[i]`` is set."""
    if len(mask) != len(a):
        raise LengthMismatch(f"mask length {len(mask)} != alignment length {len(a)}")
    ra = "".join(y if m else x for x, y, m in zip(a.row_a, a.row_b, mask))
    rb = "".join(x if m else y for x, y, m in zip(a.row_a, a.row_b, mask))
    return PairwiseAlignment(ra, rb)


def mask_crossovers(mask) -> list[int]:
    """Crossover points whose recombination series yields ``mask``.

    A column is swapped iff an odd number of points lie strictly before it,
    so the points are exactly the positions where the mask changes value.
    """
    points = []
    prev = False
    for i, m in enumerate(mask):
        if m != prev:
            points.append(i)
            prev = m
    return points


def all_masks(length: int):
    return itertools.product((False, True), repeat=length)


def reachable_recombinations(a: PairwiseAlignment, guard: int = RECOMBINATION_GUARD) -> set[PairwiseAlignment]:
    """Every alignment reachable from ``a`` by a series of recombinations."""
    if len(a) > guard:
        raise InstanceTooLarge(f"L={len(a)} exceeds recombination guard {guard}")
    return {apply_mask(a, m) for m in all_masks(len(a))}


def recombination_closure_bfs(a: PairwiseAlignment) -> set[PairwiseAlignment]:
    """Fixpoint of single recombinations; independent check on the mask form."""
    seen = {a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for i in range(len(x) + 1):
            y = recombine(x, i)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def validate_alignment(a: PairwiseAlignment, A: str, B: str) -> bool:
    L = len(a)
    return (remove_gaps(a.row_a) == A and remove_gaps(a.row_b) == B
            and a.row_a.count(GAP) == L - len(A) and a.row_b.count(GAP) == L - len(B))


def objective(inst: DiploidInstance, mask_first, mask_second):
    """``S(r(A''), r(C'')) + S(r(B''), r(D''))`` for one pair of masks."""
    a = apply_mask(inst.first, mask_first)
    c = apply_mask(inst.second, mask_second)
    return (global_alignment_score(remove_gaps(a.row_a), remove_gaps(c.row_a), inst.scheme)
            + global_alignment_score(remove_gaps(a.row_b), remove_gaps(c.row_b), inst.scheme))


def _read_pairs(a: PairwiseAlignment) -> dict[tuple[str, str], tuple[bool, ...]]:
    # Lexicographically least mask per distinct read pair; all_masks runs in that order.
    out: dict[tuple[str, str], tuple[bool, ...]] = {}
    for m in all_masks(len(a)):
        out.setdefault(apply_mask(a, m).reads(), m)
    return out


def solve_diploid_bruteforce(inst: DiploidInstance, guard: int = DIPLOID_GUARD) -> DiploidSolution:
    """Exact diploid alignment by enumerating every pair of swap masks.

    Mask pairs with identical gap-free reads are scored once; the witness is
    the lexicographically least optimal ``(mask_first, mask_second)``.
    """
    L = max(len(inst.first), len(inst.second))
    if L > guard:
        raise InstanceTooLarge(f"L={L} exceeds diploid guard {guard}")
    if L > DIPLOID_GUARD:
        warnings.warn(f"diploid enumeration over L={L} columns may not terminate soon")
    pf = _read_pairs(inst.first)
    ps = _read_pairs(inst.second)
    top_f, top_s = sorted({r[0] for r in pf}), sorted({r[0] for r in ps})
    bot_f, bot_s = sorted({r[1] for r in pf}), sorted({r[1] for r in ps})
    top = score_matrix(top_f, top_s, inst.scheme)
    bot = score_matrix(bot_f, bot_s, inst.scheme)
    ti_f = {s: k for k, s in enumerate(top_f)}
    ti_s = {s: k for k, s in enumerate(top_s)}
    bi_f = {s: k for k, s in enumerate(bot_f)}
    bi_s = {s: k for k, s in enumerate(bot_s)}
    keys_s = list(ps)
    col_top = np.array([ti_s[k[0]] for k in keys_s], dtype=np.int64)
    col_bot = np.array([bi_s[k[1]] for k in keys_s], dtype=np.int64)
    masks_s = [ps[k] for k in keys_s]

    best_val = NEG_INFINITY
    best = None
    for key_f, mf in sorted(pf.items(), key=lambda kv: kv[1]):
        vals = top[ti_f[key_f[0]], col_top] + bot[bi_f[key_f[1]], col_bot]
        v = vals.max()
        if best is not None and v < best_val:
            continue
        ms = min(masks_s[k] for k in np.flatnonzero(vals == v))
        if best is None or v > best_val or (mf, ms) < best:
            best_val, best = v, (mf, ms)
    value = NEG_INFINITY if best_val == NEG_INFINITY else int(best_val)
    return DiploidSolution(best[0], best[1], value)


def solve_diploid_naive(inst: DiploidInstance) -> DiploidSolution:
    """Literal enumeration over the BFS recombination closures (tiny inputs only)."""
    best = None
    for a in sorted(recombination_closure_bfs(inst.first), key=lambda x: (x.row_a, x.row_b)):
        for c in sorted(recombination_closure_bfs(inst.second), key=lambda x: (x.row_a, x.row_b)):
            v = (global_alignment_score(remove_gaps(a.row_a), remove_gaps(c.row_a), inst.scheme)
                 + global_alignment_score(remove_gaps(a.row_b), remove_gaps(c.row_b), inst.scheme))
            if best is None or v > best:
                best = v
    return best


def mask_from_alignment(original: PairwiseAlignment, recombined: PairwiseAlignment) -> tuple[bool, ...]:
    """Recover the swap mask turning ``original`` into ``recombined``."""
    if len(original) != len(recombined):
        raise LengthMismatch("alignments differ in length")
    mask = []
    for x, y, p, q in zip(original.row_a, original.row_b, recombined.row_a, recombined.row_b):
        if (p, q) == (x, y):
            mask.append(False)
        elif (p, q) == (y, x):
            mask.append(True)
        else:
            raise InputError("not a recombination of the original alignment")
    return tuple(mask)
