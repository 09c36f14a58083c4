"""Reduction from binary multi-string LCS to two-path covering alignment,
and its recasting as a diploid alignment instance over ``{0, 1, d, t}``.

Node layout of the first DAG (``dag_a``)::

    source -> head(S_0) -> tabs(1) -> stage 1 -> tabs(2) -> ... -> stage N -> tab(N+1) -> sink

and of the second (``dag_b``)::

    source -> tab(1) -> stage 1 -> tabs(2) -> ... -> stage N -> tabs(N+1) -> tail(S_1) -> sink

where ``tabs(i)`` is a pair of parallel tab nodes, ``tab(i)`` a single one,
and stage ``i`` is the gadget for string ``S_{i mod n}``.  A direct lane
skips the head (source to ``tabs(1)``) and the tail (``tabs(N+1)`` to sink).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Sequence

from . import labeled_dag as ld
from .cover_solvers import CoverSolution, Objective, SolverOptions, solve_bruteforce
from .diploid import DiploidInstance, PairwiseAlignment, solve_diploid_bruteforce
from .errors import (ConstructionMismatch, ImpossibleParameters, InputError, InstanceTooLarge,
                     MissingColumnMetadata, NoCanonicalInterval, NotCommonSubsequence,
                     ParameterMismatch, RetriesExhausted)
from .labeled_dag import LabeledDag, Path
from .strings_core import (BINARY, COROLLARY, GAP, NEG_INFINITY, ScoringScheme, edit_distance,
                           is_subsequence, lcs_multi)

PAPER = "paper"
DESK = "desk"
TAB_RETRIES = 1000
REDUCTION_GUARD = 10_000_000  # read pairs; the n=2, ell=2, N=2 bundles peak near 1.3 GB

ROLE_TAB = "tab"
ROLE_CHAR = "char"
ROLE_EPS = "eps"
ROLE_DSEP = "dsep"
ROLE_HEAD = "head"
ROLE_TAIL = "tail"
ROLES = (ROLE_TAB, ROLE_CHAR, ROLE_EPS, ROLE_DSEP, ROLE_HEAD, ROLE_TAIL)


@dataclass(frozen=True)
class LcsInstance:
    strings: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "strings", tuple(self.strings))
        if len(self.strings) < 2:
            raise InputError("an LCS instance needs at least two strings")
        for s in self.strings:
            BINARY.validate(s)
            if "0" not in s or "1" not in s:
                raise InputError(f"string {s!r} must contain both a 0 and a 1")
        if len({len(s) for s in self.strings}) != 1:
            raise InputError("all strings must have the same length")

    @property
    def n(self) -> int:
        return len(self.strings)

    @property
    def ell(self) -> int:
        return len(self.strings[0])

    def to_text(self) -> str:
        return "alphabet 01\n" + "".join(s + "\n" for s in self.strings)

    @classmethod
    def parse(cls, text: str) -> "LcsInstance":
        lines = text.splitlines()
        if not lines or lines[0].strip() != "alphabet 01":
            raise InputError("LCS file must start with 'alphabet 01'")
        return cls(tuple(ln.strip() for ln in lines[1:] if ln.strip()))


@dataclass(frozen=True)
class ReductionParams:
    n: int
    ell: int
    D: int
    N: int
    M: int
    tab_length: int
    tab_k: int
    seed: int = 0
    scale: str = DESK

    def __post_init__(self):
        if self.D < 1 or self.N < 1 or self.n < 2 or self.ell < 1:
            raise InputError("need D >= 1, N >= 1, n >= 2, ell >= 1")
        if not self.tab_length >= self.tab_k >= 1:
            raise InputError("need tab_length >= tab_k >= 1")

    def lines(self) -> list[str]:
        return [f"n {self.n}", f"ell {self.ell}", f"D {self.D}", f"N {self.N}", f"M {self.M}",
                f"tab_length {self.tab_length}", f"tab_k {self.tab_k}", f"seed {self.seed}",
                f"scale {self.scale}"]


def paper_tab_length(q: int, M: int) -> int:
    """``q M log2(q M) + q M^2`` with unit constants."""
    qm = q * M
    return math.ceil(qm * math.log2(qm) + q * M * M)


def default_params(inst: LcsInstance, scale: str = DESK, seed: int = 0, N: int | None = None,
                   tab_length: int | None = None, tab_k: int | None = None) -> ReductionParams:
    """Parameters for ``inst``.

    Both scales use ``D = 2 ell + 1`` and ``M = max(2 ell + 1, 4 ell^2)``.
    Paper scale takes ``N = n^2``, the tab length bound with ``q = 2N + 1``
    and ``k = ceil(2 log2 |T|)``.  Desk scale defaults to ``N = n^2``,
    ``|T| = 4 ell`` and ``k = ceil(log2 |T|)``; any of them can be overridden.
    """
    n, ell = inst.n, inst.ell
    D = 2 * ell + 1
    M = max(2 * ell + 1, 4 * ell * ell)
    if scale == PAPER:
        N_ = N or n * n
        T = tab_length or paper_tab_length(2 * N_ + 1, M)
        k = tab_k or math.ceil(2 * math.log2(T))
    elif scale == DESK:
        N_ = N or n * n
        T = tab_length or 4 * ell
        k = tab_k or max(1, math.ceil(math.log2(T)))
    else:
        raise InputError(f"unknown scale {scale!r}")
    return ReductionParams(n, ell, D, N_, M, T, min(k, T), seed, scale)


def verify_distinct_substrings(s: str, k: int) -> bool:
    """True iff all length-``k`` windows of ``s`` are pairwise distinct."""
    if k < 1:
        raise InputError("window length must be positive")
    windows = [s[i:i + k] for i in range(len(s) - k + 1)]
    return len(windows) == len(set(windows))


def gen_tab(length: int, k: int, seed: int = 0, retries: int = TAB_RETRIES) -> str:
    """Random binary string with no repeated length-``k`` window (rejection sampling)."""
    if k < 1 or length < 1:
        raise ImpossibleParameters("length and k must be positive")
    if length - k + 1 > 2 ** k:
        raise ImpossibleParameters(f"{length - k + 1} windows cannot be distinct among {2 ** k} binary {k}-mers")
    rng = random.Random(seed)
    for _ in range(retries):
        s = format(rng.getrandbits(length), f"0{length}b")
        if verify_distinct_substrings(s, k):
            return s
    raise RetriesExhausted(f"no valid tab of length {length} with k={k} in {retries} attempts")


# ---------------------------------------------------------------------------
# construction


@dataclass(frozen=True)
class Column:
    roles: tuple[str, ...]
    nodes: tuple[int, ...]


@dataclass(frozen=True)
class Stage:
    """One gadget copy: per position ``j`` the char node, its epsilon twin, and the 0^D node."""

    residue: int
    x: tuple[int, ...]
    e: tuple[int, ...]
    z: tuple[int, ...]

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(self.x + self.e + self.z)


class _Builder:
    def __init__(self):
        self.labels: list[str] = []
        self.roles: list[str] = []
        self.arcs: set[tuple[int, int]] = set()
        self.columns: list[Column] = []

    def column(self, *entries: tuple[str, str]) -> tuple[int, ...]:
        ids = []
        for label, role in entries:
            ids.append(len(self.labels))
            self.labels.append(label)
            self.roles.append(role)
        self.columns.append(Column(tuple(r for _, r in entries), tuple(ids)))
        return tuple(ids)

    def link(self, us: Sequence[int], vs: Sequence[int]):
        self.arcs.update((u, v) for u in us for v in vs)

    def gadget(self, si: str, D: int, residue: int, entry_from: Sequence[int]) -> tuple[Stage, tuple[int, ...]]:
        """Append gadget for ``si``; returns the stage and its exit nodes."""
        xs, es, zs = [], [], []
        prev = tuple(entry_from)
        for c in si:
            x, e = self.column((c, ROLE_CHAR), ("", ROLE_EPS))
            self.link(prev, (x, e))
            (z,) = self.column(("0" * D, ROLE_DSEP))
            self.link((x, e), (z,))
            xs.append(x); es.append(e); zs.append(z)
            prev = (x, e, z)
        return Stage(residue, tuple(xs), tuple(es), tuple(zs)), prev

    def dag(self) -> LabeledDag:
        return LabeledDag(tuple(self.labels), frozenset(self.arcs), ld.SIGMA_STAR)


@dataclass(frozen=True)
class Gadget:
    dag: LabeledDag
    stage: Stage
    columns: tuple[Column, ...]


def build_gadget(si: str, D: int) -> Gadget:
    """Stand-alone gadget for one input string."""
    if not si or D < 1:
        raise InputError("gadget needs a non-empty string and D >= 1")
    b = _Builder()
    stage, _ = b.gadget(si, D, 0, ())
    return Gadget(b.dag(), stage, tuple(b.columns))


def strand_paths(stage: Stage, green_positions) -> tuple[Path, Path]:
    """Red and green node sequences through a stage for a given green position set.

    Green visits the char node of each green position and the epsilon twin
    otherwise, skipping every 0^D node; red takes the complement and all 0^D nodes.
    """
    red, green = [], []
    for j, (x, e, z) in enumerate(zip(stage.x, stage.e, stage.z)):
        if j in green_positions:
            green.append(x); red.append(e)
        else:
            green.append(e); red.append(x)
        red.append(z)
    return tuple(red), tuple(green)


def red_read(si: str, green_positions, D: int) -> str:
    return "".join(("" if j in green_positions else c) + "0" * D for j, c in enumerate(si))


@dataclass(frozen=True)
class ReductionInstance:
    lcs: LcsInstance
    params: ReductionParams
    tab: str
    dag_a: LabeledDag
    dag_b: LabeledDag
    roles_a: tuple[str, ...]
    roles_b: tuple[str, ...]
    columns_a: tuple[Column, ...]
    columns_b: tuple[Column, ...]
    stages_a: tuple[Stage, ...]
    stages_b: tuple[Stage, ...]
    tabs_a: tuple[tuple[int, ...], ...]  # index 0 is depth 1
    tabs_b: tuple[tuple[int, ...], ...]
    head: int
    tail: int
    _expanded: dict = field(default_factory=dict, compare=False, repr=False)

    def expanded(self, which: str) -> tuple[LabeledDag, tuple[Path, ...]]:
        """Epsilon-DAG of ``dag_a``/``dag_b`` plus the node-to-chain map."""
        if which not in self._expanded:
            self._expanded[which] = ld.expand_with_map(self.dag_a if which == "a" else self.dag_b)
        return self._expanded[which]

    @property
    def tab_verified(self) -> bool:
        return verify_distinct_substrings(self.tab, self.params.tab_k)


def tab_adequate(ri: ReductionInstance) -> bool:
    """Weakest reading of the separator and interval preconditions.

    The tab must pass its window check, be at least ``q M`` long with
    ``q = 2N + 1``, and there must be ``N >= n^2`` stages.
    """
    p = ri.params
    return ri.tab_verified and len(ri.tab) >= (2 * p.N + 1) * p.M and p.N >= p.n * p.n


def build_instance(inst: LcsInstance, params: ReductionParams, tab: str | None = None) -> ReductionInstance:
    """Assemble both DAGs with column metadata."""
    if params.n != inst.n or params.ell != inst.ell:
        raise ParameterMismatch(f"params are for n={params.n}, ell={params.ell}; "
                                f"instance has n={inst.n}, ell={inst.ell}")
    if tab is None:
        tab = gen_tab(params.tab_length, params.tab_k, params.seed)
    elif len(tab) != params.tab_length:
        raise ParameterMismatch("tab length disagrees with params")
    S, n, N, D = inst.strings, inst.n, params.N, params.D

    a = _Builder()
    (src,) = a.column(("", ROLE_EPS))
    (head,) = a.column((S[0], ROLE_HEAD))
    a.link((src,), (head,))
    tabs_a, stages_a = [], []
    prev_exits = (head,)
    for i in range(1, N + 1):
        pair = a.column((tab, ROLE_TAB), (tab, ROLE_TAB))
        a.link(prev_exits, pair)
        if i == 1:
            a.link((src,), pair)
        tabs_a.append(pair)
        stage, prev_exits = a.gadget(S[i % n], D, i % n, pair)
        stages_a.append(stage)
    last = a.column((tab, ROLE_TAB))
    a.link(prev_exits, last)
    tabs_a.append(last)
    (sink_a,) = a.column(("", ROLE_EPS))
    a.link(last, (sink_a,))

    b = _Builder()
    (src_b,) = b.column(("", ROLE_EPS))
    first = b.column((tab, ROLE_TAB))
    b.link((src_b,), first)
    tabs_b, stages_b = [first], []
    prev_exits = first
    for i in range(1, N + 1):
        stage, exits = b.gadget(S[i % n], D, i % n, prev_exits)
        stages_b.append(stage)
        pair = b.column((tab, ROLE_TAB), (tab, ROLE_TAB))
        b.link(exits, pair)
        tabs_b.append(pair)
        prev_exits = pair
    (tail,) = b.column((S[1], ROLE_TAIL))
    (sink_b,) = b.column(("", ROLE_EPS))
    b.link(prev_exits, (tail, sink_b))
    b.link((tail,), (sink_b,))

    ri = ReductionInstance(inst, params, tab, a.dag(), b.dag(), tuple(a.roles), tuple(b.roles),
                           tuple(a.columns), tuple(b.columns), tuple(stages_a), tuple(stages_b),
                           tuple(tabs_a), tuple(tabs_b), head, tail)
    _check_structure(ri)
    return ri


def _check_structure(ri: ReductionInstance):
    N = ri.params.N
    for dag, roles, cols in ((ri.dag_a, ri.roles_a, ri.columns_a), (ri.dag_b, ri.roles_b, ri.columns_b)):
        tabs = [v for v, r in enumerate(roles) if r == ROLE_TAB]
        if len(tabs) != 2 * N + 1 or any(dag.labels[v] != ri.tab for v in tabs):
            raise ConstructionMismatch("tab node count is not 2N+1")
        seen = sorted(v for c in cols for v in c.nodes)
        if seen != list(range(len(dag))) or len(roles) != len(dag):
            raise ConstructionMismatch("columns do not partition the nodes")
        if not ld.two_path_coverable(dag):
            raise ConstructionMismatch("constructed DAG has width above 2")
    if len(ri.tabs_a[-1]) != 1 or len(ri.tabs_b[0]) != 1:
        raise ConstructionMismatch("single tab misplaced")


# ---------------------------------------------------------------------------
# Lemma-style witnesses and extraction


@dataclass(frozen=True)
class WitnessPaths:
    """Four paths in the expanded DAGs, plus the Sigma*-level paths they come from."""

    a_red: Path
    a_green: Path
    b_red: Path
    b_green: Path
    delta: int
    coarse: tuple[Path, Path, Path, Path]

    def as_solution(self, value=None) -> CoverSolution:
        return CoverSolution(self.a_red, self.a_green, self.b_red, self.b_green, value)


def leftmost_embedding(sub: str, sup: str) -> tuple[int, ...]:
    """Positions of the greedy leftmost occurrence of ``sub`` as a subsequence of ``sup``."""
    out, j = [], 0
    for c in sub:
        while sup[j] != c:
            j += 1
        out.append(j)
        j += 1
    return tuple(out)


def _refine(chains: Sequence[Path], path: Sequence[int]) -> Path:
    return tuple(v for u in path for v in chains[u])


def lemma1_witness(ri: ReductionInstance, s_prime: str) -> WitnessPaths:
    """Disjoint covering paths realising cost ``2 (ell - |S'|)`` for a common subsequence ``S'``."""
    S = ri.lcs.strings
    if not all(is_subsequence(s_prime, s) for s in S):
        raise NotCommonSubsequence(f"{s_prime!r} is not a subsequence of every input")
    greens = [set(leftmost_embedding(s_prime, s)) for s in S]
    T, N, n, D = ri.tab, ri.params.N, ri.lcs.n, ri.params.D

    a_red, a_green = [], [0, ri.head]
    for i, stage in enumerate(ri.stages_a, 1):
        tr, tg = ri.tabs_a[i - 1]
        r, g = strand_paths(stage, greens[stage.residue])
        a_red += [tr, *r]
        a_green += [tg, *g]
    a_red += [ri.tabs_a[-1][0], len(ri.dag_a) - 1]

    b_red, b_green = [0, ri.tabs_b[0][0]], []
    for i, stage in enumerate(ri.stages_b, 1):
        r, g = strand_paths(stage, greens[stage.residue])
        tr, tg = ri.tabs_b[i]
        b_red += [*r, tr]
        b_green += [*g, tg]
    b_green += [ri.tail, len(ri.dag_b) - 1]

    coarse = tuple(tuple(p) for p in (a_red, a_green, b_red, b_green))
    for dag, p, q in ((ri.dag_a, coarse[0], coarse[1]), (ri.dag_b, coarse[2], coarse[3])):
        if not (dag.is_path(p) and dag.is_path(q)):
            raise ConstructionMismatch("witness is not a pair of paths")
        if set(p) & set(q):
            raise ConstructionMismatch("witness paths are not disjoint")
        if set(p) | set(q) != set(range(len(dag))):
            raise ConstructionMismatch("witness paths do not cover the DAG")

    reds = {r: red_read(S[r], greens[r], D) for r in range(n)}
    rng_ = range(1, N + 1)
    expect_ar = "".join(T + reds[i % n] for i in rng_) + T
    expect_ag = S[0] + "".join(T + s_prime for _ in rng_)
    expect_br = T + "".join(reds[i % n] + T for i in rng_)
    expect_bg = "".join(s_prime + T for _ in rng_) + S[1]
    got = [ld.read(ri.dag_a, coarse[0]), ld.read(ri.dag_a, coarse[1]),
           ld.read(ri.dag_b, coarse[2]), ld.read(ri.dag_b, coarse[3])]
    if got != [expect_ar, expect_ag, expect_br, expect_bg] or got[0] != got[2]:
        raise ConstructionMismatch("witness reads differ from the expected products")

    _, chains_a = ri.expanded("a")
    _, chains_b = ri.expanded("b")
    return WitnessPaths(_refine(chains_a, coarse[0]), _refine(chains_a, coarse[1]),
                        _refine(chains_b, coarse[2]), _refine(chains_b, coarse[3]),
                        ri.lcs.ell - len(s_prime), coarse)


def _coarse_nodes(chains: Sequence[Path], path: Sequence[int]) -> set[int]:
    owner = {}
    for u, c in enumerate(chains):
        for v in c:
            owner[v] = u
    return {owner[v] for v in path}


def _stage_subsequence(dag: LabeledDag, stage: Stage, coarse: set[int]) -> str:
    return "".join(dag.labels[x] for x in stage.x if x in coarse)


def lemma2_extract(ri: ReductionInstance, sol: CoverSolution) -> str:
    """Common subsequence encoded by the green strands of a covering solution.

    ``sol`` holds paths of the expanded DAGs.  In each DAG the green path is
    the one that does not traverse the single tab (either, if ambiguous).
    A window of ``n`` consecutive stages whose green char-subsequences agree
    encodes a string that is a subsequence of every input; the longest such
    string over all windows is returned.
    """
    dag_ea, chains_a = ri.expanded("a")
    dag_eb, chains_b = ri.expanded("b")
    for d, p in ((dag_ea, sol.r1), (dag_ea, sol.g1), (dag_eb, sol.r2), (dag_eb, sol.g2)):
        d.check_path(p)
    if set(sol.r1) | set(sol.g1) != set(range(len(dag_ea))) or \
            set(sol.r2) | set(sol.g2) != set(range(len(dag_eb))):
        raise InputError("solution paths do not cover both DAGs")
    n, N = ri.lcs.n, ri.params.N
    candidates = set()
    for dag, chains, pair, single, stages in (
            (ri.dag_a, chains_a, (sol.r1, sol.g1), ri.tabs_a[-1][0], ri.stages_a),
            (ri.dag_b, chains_b, (sol.r2, sol.g2), ri.tabs_b[0][0], ri.stages_b)):
        full = set(chains[single])
        greens = [p for p in pair if not full <= set(p)] or list(pair)
        for p in greens:
            coarse = _coarse_nodes(chains, p)
            subs = [_stage_subsequence(dag, st, coarse) for st in stages]
            for t in range(0, N - n + 1):
                window = subs[t:t + n]
                if len(set(window)) == 1:
                    candidates.add(window[0])
    candidates = {c for c in candidates if all(is_subsequence(c, s) for s in ri.lcs.strings)}
    if not candidates:
        raise NoCanonicalInterval("no window of n stages with identical green strands")
    return min(candidates, key=lambda c: (-len(c), c))


# ---------------------------------------------------------------------------
# diploid recasting


def corollary_scheme(D: int) -> ScoringScheme:
    """Scores over ``{0, 1, d, t}`` making tabs rigid and 0^D runs a single heavy symbol."""
    syms = COROLLARY.symbols + GAP
    table = {}
    for a in syms:
        for b in syms:
            if a == b:
                v = 0
            elif "t" in (a, b):
                v = NEG_INFINITY
            elif "d" in (a, b):
                v = -D
            else:
                v = -1
            table[a, b] = v
    return ScoringScheme(COROLLARY, table)


def _block(ri: ReductionInstance, dag: LabeledDag, col: Column) -> list[tuple[str, str]]:
    def sym(v):
        lab = dag.labels[v]
        if lab == ri.tab and col.roles[col.nodes.index(v)] == ROLE_TAB:
            return "t"
        if lab and set(lab) == {"0"} and col.roles[col.nodes.index(v)] == ROLE_DSEP:
            return "d"
        return lab

    roles = col.roles
    if len(col.nodes) == 2:
        u, w = col.nodes
        if roles == (ROLE_TAB, ROLE_TAB):
            return [("t", "t")]
        if ROLE_EPS in roles:
            v = u if roles[1] == ROLE_EPS else w
            return [(sym(v), GAP)]
    elif len(col.nodes) == 1:
        (v,) = col.nodes
        role = roles[0]
        if role == ROLE_DSEP:
            return [("d", GAP)]
        if role in (ROLE_HEAD, ROLE_TAIL):
            return [(c, c) for c in dag.labels[v]]
        if role == ROLE_TAB:
            return [("t", GAP)]
        if role == ROLE_EPS:
            return []
    raise MissingColumnMetadata(f"column {col} matches no encoding case")


def corollary_blocks(ri: ReductionInstance, which: str) -> list[list[tuple[str, str]]]:
    dag, cols = (ri.dag_a, ri.columns_a) if which == "a" else (ri.dag_b, ri.columns_b)
    if not cols:
        raise MissingColumnMetadata("instance carries no column metadata")
    return [_block(ri, dag, c) for c in cols]


def corollary_encode(ri: ReductionInstance) -> DiploidInstance:
    rows = []
    for which in ("a", "b"):
        pairs = [p for blk in corollary_blocks(ri, which) for p in blk]
        rows.append(PairwiseAlignment("".join(p[0] for p in pairs), "".join(p[1] for p in pairs)))
    return DiploidInstance(rows[0], rows[1], corollary_scheme(ri.params.D))


@dataclass(frozen=True)
class CorollaryReport:
    diploid_score: object
    v1: object
    v2: int
    lcs_length: int
    bound: int

    @property
    def equal(self) -> bool:
        return self.v1 == self.v2

    @property
    def upper_bound_holds(self) -> bool:
        return self.v2 <= self.bound


def corollary_verify(ri: ReductionInstance, diploid_guard: int = 24,
                     guard: int | None = None) -> CorollaryReport:
    """Run both exhaustive oracles and compare ``-score - 2 ell`` with the covering optimum."""
    dip = corollary_encode(ri)
    sol = solve_diploid_bruteforce(dip, guard=diploid_guard)
    ell = ri.lcs.ell
    v1 = NEG_INFINITY if sol.value == NEG_INFINITY else -sol.value - 2 * ell
    cover = solve_cover(ri, guard=guard)
    lcs = lcs_multi(ri.lcs.strings)
    return CorollaryReport(sol.value, v1, cover.value, len(lcs), 2 * (ell - len(lcs)))


def solve_cover(ri: ReductionInstance, opts: SolverOptions = SolverOptions(),
                guard: int | None = None) -> CoverSolution:
    """Exhaustive covering alignment of the two expanded DAGs."""
    da, _ = ri.expanded("a")
    db, _ = ri.expanded("b")
    return solve_bruteforce(da, db, opts, REDUCTION_GUARD if guard is None else guard)


def witness_costs(ri: ReductionInstance, w: WitnessPaths) -> tuple[int, int]:
    da, _ = ri.expanded("a")
    db, _ = ri.expanded("b")
    return (edit_distance(ld.read(da, w.a_red), ld.read(db, w.b_red)),
            edit_distance(ld.read(da, w.a_green), ld.read(db, w.b_green)))


# ---------------------------------------------------------------------------
# bundle files

BUNDLE_FILES = ("a.dag", "b.dag", "meta.txt", "instance.lcs")


def meta_text(ri: ReductionInstance) -> str:
    lines = ri.params.lines() + [f"tab {ri.tab}", f"tab_verified {'yes' if ri.tab_verified else 'no'}"]
    for which, cols in (("a", ri.columns_a), ("b", ri.columns_b)):
        lines.append(f"columns {which} {len(cols)}")
        for idx, c in enumerate(cols):
            lines.append(f"col {idx} {','.join(c.roles)} {' '.join(map(str, c.nodes))}")
    return "\n".join(lines) + "\n"


def write_bundle(ri: ReductionInstance, out: FsPath):
    out = FsPath(out)
    out.mkdir(parents=True, exist_ok=True)
    contents = {"a.dag": ri.dag_a.to_text(), "b.dag": ri.dag_b.to_text(),
                "meta.txt": meta_text(ri), "instance.lcs": ri.lcs.to_text()}
    for name, text in contents.items():
        tmp = out / (name + ".tmp")
        tmp.write_text(text)
        tmp.replace(out / name)


def read_bundle(path: FsPath) -> ReductionInstance:
    """Load a bundle and check it against a fresh construction from its parameters."""
    path = FsPath(path)
    try:
        texts = {name: (path / name).read_text() for name in BUNDLE_FILES}
    except OSError as e:
        raise InputError(f"cannot read bundle: {e}") from None
    dag_a = ld.parse_dag(texts["a.dag"])
    dag_b = ld.parse_dag(texts["b.dag"])
    inst = LcsInstance.parse(texts["instance.lcs"])
    meta = {}
    cols: dict[str, list[Column]] = {"a": [], "b": []}
    current = None
    for ln in texts["meta.txt"].splitlines():
        parts = ln.split()
        if not parts:
            continue
        if parts[0] == "columns":
            current = parts[1]
        elif parts[0] == "col":
            if current not in cols or len(parts) < 4:
                raise InputError(f"bad column line {ln!r}")
            roles = tuple(parts[2].split(","))
            cols[current].append(Column(roles, tuple(int(x) for x in parts[3:])))
        else:
            meta[parts[0]] = parts[1] if len(parts) > 1 else ""
    try:
        params = ReductionParams(int(meta["n"]), int(meta["ell"]), int(meta["D"]), int(meta["N"]),
                                 int(meta["M"]), int(meta["tab_length"]), int(meta["tab_k"]),
                                 int(meta["seed"]), meta["scale"])
        tab = meta["tab"]
    except (KeyError, ValueError) as e:
        raise InputError(f"bad meta.txt: {e}") from None
    ri = build_instance(inst, params, tab)
    if ri.dag_a != dag_a or ri.dag_b != dag_b:
        raise InputError("bundle DAGs differ from the construction for its parameters")
    if tuple(cols["a"]) != ri.columns_a or tuple(cols["b"]) != ri.columns_b:
        raise InputError("bundle column table differs from the construction")
    return ri


def size_of(params: ReductionParams) -> int:
    """Total label length of both DAGs, used as the bundle size cap."""
    per_stage = params.ell * (1 + params.D)
    return 2 * ((2 * params.N + 1) * params.tab_length + params.N * per_stage + params.ell)


def guard_size(params: ReductionParams, cap: int):
    total = size_of(params)
    if total > cap:
        raise InstanceTooLarge(f"bundle would hold {total} label characters (cap {cap})")
