"""Strings over small alphabets, edit distance and scored global alignment.

Strings are plain Python ``str`` objects; an :class:`Alphabet` validates
them.  Scores are ints, or :data:`NEG_INFINITY` for forbidden column pairs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InputError, InstanceTooLarge, NotASubsequence

GAP = "-"

#: Score of a forbidden column; absorbing under addition, below every int.
NEG_INFINITY = -math.inf

LCS_MAX_FIRST_LENGTH = 20
LCS_MAX_STRINGS = 6


@dataclass(frozen=True)
class Alphabet:
    """An ordered symbol table.  ``code(c)`` is the index of ``c``."""

    symbols: str

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise InputError(f"duplicate symbols in alphabet {self.symbols!r}")
        if GAP in self.symbols:
            raise InputError("the gap symbol cannot be part of an alphabet")
        if any(c.isspace() or c == '"' for c in self.symbols):
            raise InputError("alphabet symbols must be printable and unquoted")

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, c):
        return c in self.symbols

    def code(self, c: str) -> int:
        try:
            return self.symbols.index(c)
        except ValueError:
            raise InputError(f"symbol {c!r} not in alphabet {self.symbols!r}") from None

    def validate(self, s: str, allow_gap: bool = False) -> str:
        for c in s:
            if c not in self.symbols and not (allow_gap and c == GAP):
                raise InputError(f"symbol {c!r} not in alphabet {self.symbols!r}")
        return s


BINARY = Alphabet("01")
COROLLARY = Alphabet("01dt")


def _fmt_score(v) -> str:
    return "-inf" if v == NEG_INFINITY else str(int(v))


@dataclass(frozen=True)
class ScoringScheme:
    """Column scores ``s(a, b)`` over an alphabet extended with the gap."""

    alphabet: Alphabet
    table: Mapping[tuple[str, str], float] = field(repr=False)

    def __post_init__(self):
        syms = self.alphabet.symbols + GAP
        missing = [(a, b) for a in syms for b in syms if (a, b) not in self.table]
        if missing:
            raise InputError(f"scoring table lacks entries for {missing[:3]}...")
        for v in self.table.values():
            if v != NEG_INFINITY and v != int(v):
                raise InputError("scores must be integers or -inf")

    def __call__(self, a: str, b: str):
        return self.table[a, b]

    @classmethod
    def unit(cls, alphabet: Alphabet = BINARY) -> "ScoringScheme":
        """Match 0, mismatch and indel -1; equivalent to negated edit distance."""
        syms = alphabet.symbols + GAP
        table = {(a, b): (0 if a == b else -1) for a in syms for b in syms}
        return cls(alphabet, table)

    def matrix(self) -> np.ndarray:
        """Float matrix indexed by alphabet code, with the gap at the last index."""
        syms = self.alphabet.symbols + GAP
        return np.array([[float(self.table[a, b]) for b in syms] for a in syms])

    def format(self) -> str:
        syms = self.alphabet.symbols + GAP
        lines = ["scheme " + " ".join(syms)]
        for a in syms:
            lines.append(a + " " + " ".join(_fmt_score(self.table[a, b]) for b in syms))
        return "\n".join(lines) + "\n"


def edit_distance(s: str, t: str) -> int:
    """Unit-cost Levenshtein distance with a two-row table."""
    if len(s) < len(t):
        s, t = t, s
    prev = list(range(len(t) + 1))
    for i, a in enumerate(s, 1):
        cur = [i]
        for j, b in enumerate(t, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a != b)))
        prev = cur
    return prev[-1]


def global_alignment_score(s: str, t: str, scheme: ScoringScheme):
    """Maximum column-score sum over all global alignments of ``s`` and ``t``.

    Returns :data:`NEG_INFINITY` only when every alignment uses a forbidden pair.
    """
    sc = scheme.table
    prev = [0]
    for b in t:
        prev.append(prev[-1] + sc[GAP, b])
    for a in s:
        cur = [prev[0] + sc[a, GAP]]
        for j, b in enumerate(t, 1):
            cur.append(max(prev[j - 1] + sc[a, b], prev[j] + sc[a, GAP], cur[j - 1] + sc[GAP, b]))
        prev = cur
    return prev[-1]


def global_alignment(s: str, t: str, scheme: ScoringScheme) -> tuple[object, str, str]:
    """Score plus one optimal alignment as two gapped rows.

    Keeps the full table for traceback; ties prefer diagonal, then deletion.
    """
    sc = scheme.table
    n, m = len(s), len(t)
    H = [[0.0] * (m + 1) for _ in range(n + 1)]
    for j in range(1, m + 1):
        H[0][j] = H[0][j - 1] + sc[GAP, t[j - 1]]
    for i in range(1, n + 1):
        H[i][0] = H[i - 1][0] + sc[s[i - 1], GAP]
        for j in range(1, m + 1):
            H[i][j] = max(H[i - 1][j - 1] + sc[s[i - 1], t[j - 1]],
                          H[i - 1][j] + sc[s[i - 1], GAP],
                          H[i][j - 1] + sc[GAP, t[j - 1]])
    score = H[n][m]
    if score == NEG_INFINITY:
        return score, "", ""
    rs, rt = [], []
    i, j = n, m
    while i or j:
        if i and j and H[i][j] == H[i - 1][j - 1] + sc[s[i - 1], t[j - 1]]:
            rs.append(s[i - 1]); rt.append(t[j - 1]); i -= 1; j -= 1
        elif i and H[i][j] == H[i - 1][j] + sc[s[i - 1], GAP]:
            rs.append(s[i - 1]); rt.append(GAP); i -= 1
        else:
            rs.append(GAP); rt.append(t[j - 1]); j -= 1
    return int(score), "".join(reversed(rs)), "".join(reversed(rt))


def is_subsequence(sub: str, sup: str) -> bool:
    it = iter(sup)
    return all(c in it for c in sub)


def subsequence_edit_identity(sub: str, sup: str) -> int:
    """``|sup| - |sub|``, cross-checked against the edit distance."""
    if not is_subsequence(sub, sup):
        raise NotASubsequence(f"{sub!r} is not a subsequence of {sup!r}")
    d = len(sup) - len(sub)
    assert d == edit_distance(sub, sup)
    return d


def lcs_multi(strings: Sequence[str], max_first: int = LCS_MAX_FIRST_LENGTH,
              max_strings: int = LCS_MAX_STRINGS) -> str:
    """Exhaustive longest common subsequence of all ``strings``.

    Ties go to the lexicographically least witness.  This is a verification
    oracle: it enumerates every subsequence of the first string.
    """
    if not strings:
        raise InputError("lcs_multi needs at least one string")
    first, rest = strings[0], strings[1:]
    if len(first) > max_first or len(strings) > max_strings:
        raise InstanceTooLarge(
            f"lcs_multi guard: |first|={len(first)} (max {max_first}), "
            f"n={len(strings)} (max {max_strings})")
    for k in range(len(first), -1, -1):
        candidates = sorted({"".join(c) for c in itertools.combinations(first, k)})
        for cand in candidates:
            if all(is_subsequence(cand, s) for s in rest):
                return cand
    return ""  # unreachable: the empty string always qualifies


def common_subsequences(strings: Sequence[str]) -> list[str]:
    """Every distinct common subsequence of ``strings``, sorted by (length, value)."""
    first = strings[0]
    if len(first) > LCS_MAX_FIRST_LENGTH:
        raise InstanceTooLarge("common_subsequences guard exceeded")
    found = set()
    for k in range(len(first) + 1):
        for c in itertools.combinations(first, k):
            cand = "".join(c)
            if cand not in found and all(is_subsequence(cand, s) for s in strings[1:]):
                found.add(cand)
    return sorted(found, key=lambda x: (len(x), x))


def distance_matrix(xs: Sequence[str], ys: Sequence[str]) -> np.ndarray:
    """All pairwise edit distances, shape ``(len(xs), len(ys))``.

    Backed by rapidfuzz's bit-parallel Levenshtein; agreement with
    :func:`edit_distance` is covered by the test suite.
    """
    from rapidfuzz.distance import Levenshtein
    from rapidfuzz.process import cdist

    if not xs or not ys:
        return np.zeros((len(xs), len(ys)), dtype=np.int64)
    return cdist(list(xs), list(ys), scorer=Levenshtein.distance, dtype=np.int64, workers=1)


def score_matrix(xs: Sequence[str], ys: Sequence[str], scheme: ScoringScheme) -> np.ndarray:
    """All pairwise global alignment scores as a float array (``-inf`` allowed).

    The DP is vectorised over every ``y`` of the same length.
    """
    syms = scheme.alphabet.symbols
    S = scheme.matrix()
    gap = len(syms)
    out = np.empty((len(xs), len(ys)))
    groups: dict[int, list[int]] = {}
    for k, y in enumerate(ys):
        groups.setdefault(len(y), []).append(k)
    with np.errstate(invalid="ignore"):
        for m, idx in groups.items():
            Y = np.array([[syms.index(c) for c in ys[k]] for k in idx], dtype=np.int64).reshape(len(idx), m)
            ins = S[gap][Y] if m else np.zeros((len(idx), 0))
            first_row = np.concatenate([np.zeros((len(idx), 1)), np.cumsum(ins, axis=1)], axis=1)
            for xi, x in enumerate(xs):
                prev = first_row
                for a in x:
                    ca = syms.index(a)
                    cur = np.empty_like(prev)
                    cur[:, 0] = prev[:, 0] + S[ca, gap]
                    best = np.maximum(prev[:, :-1] + S[ca][Y], prev[:, 1:] + S[ca, gap])
                    for j in range(1, m + 1):
                        cur[:, j] = np.maximum(best[:, j - 1], cur[:, j - 1] + ins[:, j - 1])
                    prev = cur
                out[xi, idx] = prev[:, m]
    return out


def parse_string(line: str, alphabet: Alphabet) -> str:
    return alphabet.validate(line.strip())


def strings_of(alphabet: Alphabet, length: int) -> Iterable[str]:
    """Every string of exactly ``length`` symbols, in lexicographic code order."""
    for t in itertools.product(alphabet.symbols, repeat=length):
        yield "".join(t)
