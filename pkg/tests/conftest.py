import itertools
import random
from pathlib import Path

import pytest

from dipalign.labeled_dag import SIGMA_EPS, LabeledDag, iter_paths

GOLDEN = Path(__file__).parent / "golden"

# Acceptance outcomes, collected by test_acceptance and echoed after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_dag(rng: random.Random, n: int, p: float = 0.4, alphabet: str = "01",
               eps: float = 0.0) -> LabeledDag:
    """Arcs only go forward in a random relabelling, so the result is acyclic."""
    perm = list(range(n))
    rng.shuffle(perm)
    arcs = {(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    labels = tuple("" if rng.random() < eps else rng.choice(alphabet) for _ in range(n))
    return LabeledDag(labels, frozenset(arcs), SIGMA_EPS)


def exhaustive_coverable(d: LabeledDag) -> bool:
    paths = list(iter_paths(d))
    everything = set(range(len(d)))
    return any(set(p) | set(q) == everything for p, q in itertools.combinations_with_replacement(paths, 2))


def naive_edit_distance(s: str, t: str) -> int:
    """The textbook recursion, memoised only so length-8 inputs stay quick."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (s[i - 1] != t[j - 1]))

    return d(len(s), len(t))


@pytest.fixture
def rng():
    return random.Random(12345)
