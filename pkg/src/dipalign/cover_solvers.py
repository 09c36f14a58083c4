"""Exact solvers for two-path covering alignment of two labeled DAGs.

``solve_bruteforce`` is exhaustive over every admissible quadruple of paths.
Quadruples are grouped by their reads, since the objective depends on the
reads alone; each group keeps its lexicographically least witness.
``solve_relaxed_dp`` handles the variant in which the second DAG need not
be covered, in time polynomial in both DAGs.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (CoverViolated, DisjointnessViolated, InputError, InstanceTooLarge,
                     InvalidPath, NotCoverable)
from .labeled_dag import (PATH_GUARD, SIGMA, SIGMA_EPS, LabeledDag, Path, count_paths,
                          iter_paths)
from .strings_core import distance_matrix, edit_distance

SUM = "sum"
WEIGHTED = "weighted"
LEX = "lex"
MAX = "max"

READ_PAIR_GUARD = 2_000_000


@dataclass(frozen=True)
class Objective:
    kind: str = SUM
    alpha_red: int = 1
    alpha_green: int = 1

    def __post_init__(self):
        if self.kind not in (SUM, WEIGHTED, LEX, MAX):
            raise InputError(f"unknown objective {self.kind!r}")
        if self.kind == WEIGHTED:
            if self.alpha_red < 0 or self.alpha_green < 0:
                raise InputError("weights must be non-negative")
            if self.alpha_red == 0 and self.alpha_green == 0:
                raise InputError("weights cannot both be zero")

    @classmethod
    def parse(cls, text: str) -> "Objective":
        if text in (SUM, LEX, MAX):
            return cls(text)
        if text.startswith(WEIGHTED + ":"):
            try:
                a, b = (int(x) for x in text.split(":", 1)[1].split(","))
            except ValueError:
                raise InputError(f"bad weighted objective {text!r}") from None
            return cls(WEIGHTED, a, b)
        raise InputError(f"unknown objective {text!r}")

    def fold(self, d_red: int, d_green: int):
        if self.kind == SUM:
            return d_red + d_green
        if self.kind == WEIGHTED:
            return self.alpha_red * d_red + self.alpha_green * d_green
        if self.kind == LEX:
            return (d_red, d_green)
        return max(d_red, d_green)

    def fold_array(self, d_red: np.ndarray, d_green: np.ndarray, bound: int) -> np.ndarray:
        """Vectorised :meth:`fold` with lexicographic pairs packed as ``d_red * bound + d_green``."""
        if self.kind == SUM:
            return d_red + d_green
        if self.kind == WEIGHTED:
            return self.alpha_red * d_red + self.alpha_green * d_green
        if self.kind == LEX:
            return d_red * bound + d_green
        return np.maximum(d_red, d_green)

    def unpack(self, packed: int, bound: int):
        if self.kind == LEX:
            return (int(packed) // bound, int(packed) % bound)
        return int(packed)


@dataclass(frozen=True)
class SolverOptions:
    objective: Objective = Objective()
    disjoint_d1: bool = False
    disjoint_d2: bool = False
    source_to_sink_only: bool = False
    require_cover_d2: bool = True


@dataclass(frozen=True)
class CoverSolution:
    r1: Path
    g1: Path
    r2: Path
    g2: Path
    value: object

    def format(self) -> str:
        v = self.value
        vtxt = f"{v[0]},{v[1]}" if isinstance(v, tuple) else str(v)
        lines = [f"value {vtxt}"]
        for name in ("r1", "g1", "r2", "g2"):
            lines.append(f"path {name} " + " ".join(map(str, getattr(self, name))))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "CoverSolution":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if len(lines) != 5 or lines[0][0] != "value" or len(lines[0]) != 2:
            raise InputError("a solution has one value line and four path lines")
        raw = lines[0][1]
        value = tuple(int(x) for x in raw.split(",")) if "," in raw else int(raw)
        paths = {}
        for ln in lines[1:]:
            if ln[0] != "path" or len(ln) < 3 or ln[1] not in ("r1", "g1", "r2", "g2"):
                raise InputError(f"bad path line {' '.join(ln)!r}")
            paths[ln[1]] = tuple(int(x) for x in ln[2:])
        if len(paths) != 4:
            raise InputError("missing path line")
        return cls(value=value, **paths)


def cover_read_pairs(d: LabeledDag, disjoint: bool = False, source_to_sink_only: bool = False,
                     guard: int = READ_PAIR_GUARD) -> dict[tuple[str, str], tuple[Path, Path]]:
    """Distinct ``(red read, green read)`` of ordered jointly covering path pairs.

    Nodes are swept in topological order and each is handed to the red path,
    the green path or (unless ``disjoint``) both; a path grows only along an
    arc from its current end.  Every covering pair arises from exactly one
    such assignment.  Values are the lexicographically least witnesses.
    """
    order = d.topo_order
    n = len(order)
    labels = d.labels
    arcs = d.arcs
    sources = set(d.sources)
    sinks = set(d.sinks)
    memo: dict[tuple[int, int, int], dict] = {}
    count = 0

    def can_take(end, v):
        if end == -1:
            return not source_to_sink_only or v in sources
        return (end, v) in arcs

    def solve(k, er, eg):
        nonlocal count
        key = (k, er, eg)
        if key in memo:
            return memo[key]
        if k == n:
            ok = er != -1 and eg != -1 and (not source_to_sink_only or (er in sinks and eg in sinks))
            res = {("", ""): ((), ())} if ok else {}
            memo[key] = res
            return res
        v = order[k]
        lab = labels[v]
        tr, tg = can_take(er, v), can_take(eg, v)
        res: dict = {}
        options = []
        if tr:
            options.append((True, False))
        if tg:
            options.append((False, True))
        if tr and tg and not disjoint:
            options.append((True, True))
        for in_r, in_g in options:
            sub = solve(k + 1, v if in_r else er, v if in_g else eg)
            for (rs, gs), (rw, gw) in sub.items():
                rkey = lab + rs if in_r else rs
                gkey = lab + gs if in_g else gs
                wit = ((v,) + rw if in_r else rw, (v,) + gw if in_g else gw)
                old = res.get((rkey, gkey))
                if old is None or wit < old:
                    res[rkey, gkey] = wit
        count += len(res)
        if count > guard:
            raise InstanceTooLarge(f"read-pair enumeration exceeded guard {guard}")
        memo[key] = res
        return res

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 1000))
    try:
        result = solve(0, -1, -1)
    finally:
        sys.setrecursionlimit(limit)
    return result


def iter_cover_pairs(d: LabeledDag, disjoint: bool = False, source_to_sink_only: bool = False):
    """Every ordered jointly covering pair, as ``(red, green)`` node tuples."""
    order = d.topo_order
    n = len(order)
    sources, sinks = set(d.sources), set(d.sinks)

    def can_take(path, v):
        if not path:
            return not source_to_sink_only or v in sources
        return (path[-1], v) in d.arcs

    def rec(k, red, green):
        if k == n:
            if red and green and (not source_to_sink_only or (red[-1] in sinks and green[-1] in sinks)):
                yield tuple(red), tuple(green)
            return
        v = order[k]
        tr, tg = can_take(red, v), can_take(green, v)
        if tr:
            yield from rec(k + 1, red + [v], green)
        if tg:
            yield from rec(k + 1, red, green + [v])
        if tr and tg and not disjoint:
            yield from rec(k + 1, red + [v], green + [v])

    yield from rec(0, [], [])


def _path_reads(d: LabeledDag, source_to_sink_only: bool, guard: int) -> dict[str, Path]:
    total = count_paths(d, source_to_sink_only)
    if total > guard:
        raise InstanceTooLarge(f"{total} paths exceed the enumeration guard {guard}")
    out: dict[str, Path] = {}
    for p in iter_paths(d, source_to_sink_only):
        out.setdefault("".join(d.labels[v] for v in p), p)
    return out


def _free_pairs(d: LabeledDag, opts: SolverOptions, guard: int) -> dict[tuple[str, str], tuple[Path, Path]]:
    """Read pairs of two paths that need not cover, optionally node-disjoint."""
    total = count_paths(d, opts.source_to_sink_only)
    if total * total > guard:
        raise InstanceTooLarge(f"{total}^2 path pairs exceed the enumeration guard {guard}")
    paths = list(iter_paths(d, opts.source_to_sink_only))
    reads = ["".join(d.labels[v] for v in p) for p in paths]
    out: dict[tuple[str, str], tuple[Path, Path]] = {}
    for p, rp in zip(paths, reads):
        sp = set(p)
        for q, rq in zip(paths, reads):
            if opts.disjoint_d2 and not sp.isdisjoint(q):
                continue
            out.setdefault((rp, rq), (p, q))
    return out


def solve_bruteforce(d1: LabeledDag, d2: LabeledDag, opts: SolverOptions = SolverOptions(),
                     guard: int = READ_PAIR_GUARD) -> CoverSolution:
    """Global optimum over all admissible path quadruples.

    Red paths are compared with red, green with green.  The witness is the
    lexicographically least ``(r1, g1, r2, g2)`` among optimal quadruples.
    """
    obj = opts.objective
    p1 = cover_read_pairs(d1, opts.disjoint_d1, opts.source_to_sink_only, guard)
    if not p1:
        raise NotCoverable("first DAG admits no admissible covering pair")
    separable = not opts.require_cover_d2 and not opts.disjoint_d2
    if opts.require_cover_d2:
        p2 = cover_read_pairs(d2, opts.disjoint_d2, opts.source_to_sink_only, guard)
        if not p2:
            raise NotCoverable("second DAG admits no admissible covering pair")
    elif separable:
        singles = _path_reads(d2, opts.source_to_sink_only, PATH_GUARD)
    else:
        p2 = _free_pairs(d2, opts, guard)
        if not p2:
            raise NotCoverable("second DAG admits no pair of disjoint paths")

    keys1 = sorted(p1, key=p1.__getitem__)
    red1 = sorted({k[0] for k in keys1})
    green1 = sorted({k[1] for k in keys1})
    ri = {s: i for i, s in enumerate(red1)}
    r1_idx = np.array([ri[k[0]] for k in keys1])
    gi = {s: i for i, s in enumerate(green1)}
    g1_idx = np.array([gi[k[1]] for k in keys1])

    if separable:
        keys_r = sorted(singles, key=singles.__getitem__)
        dR = distance_matrix(red1, keys_r)
        dG = distance_matrix(green1, keys_r)
        bound = int(max(dR.max(), dG.max())) + 1
        best_r = dR.min(axis=1)[r1_idx]
        best_g = dG.min(axis=1)[g1_idx]
        vals = obj.fold_array(best_r, best_g, bound)
        best = vals.min()
        k1 = keys1[int(np.flatnonzero(vals == best)[0])]
        a = dR[ri[k1[0]]]
        b = dG[gi[k1[1]]]
        # Least red path whose read can be completed to the optimum, then least green path.
        for ui, u in enumerate(keys_r):
            row = obj.fold_array(np.full(len(keys_r), a[ui]), b, bound)
            hits = np.flatnonzero(row == best)
            if len(hits):
                w = min((keys_r[h] for h in hits), key=singles.__getitem__)
                r2, g2 = singles[u], singles[w]
                break
        r1, g1 = p1[k1]
        return CoverSolution(r1, g1, r2, g2, obj.unpack(best, bound))

    keys2 = sorted(p2, key=p2.__getitem__)
    red2 = sorted({k[0] for k in keys2})
    green2 = sorted({k[1] for k in keys2})
    ri2 = {s: i for i, s in enumerate(red2)}
    gi2 = {s: i for i, s in enumerate(green2)}
    r2_idx = np.array([ri2[k[0]] for k in keys2])
    g2_idx = np.array([gi2[k[1]] for k in keys2])
    dR = distance_matrix(red1, red2)
    dG = distance_matrix(green1, green2)
    bound = int(max(dR.max(), dG.max())) + 1

    best = None
    best_pair = None
    chunk = max(1, 2_000_000 // max(1, len(keys2)))
    for lo in range(0, len(keys1), chunk):
        hi = min(len(keys1), lo + chunk)
        vals = obj.fold_array(dR[r1_idx[lo:hi]][:, r2_idx], dG[g1_idx[lo:hi]][:, g2_idx], bound)
        m = vals.min()
        if best is None or m < best:
            best = m
            i, j = np.unravel_index(np.argmax(vals == m), vals.shape)
            best_pair = (lo + int(i), int(j))
        if best == 0:
            break  # nothing folds below zero; later rows carry larger witnesses
    # keys are sorted by witness, so the first optimal row and column are the least witness
    k1, k2 = keys1[best_pair[0]], keys2[best_pair[1]]
    (r1, g1), (r2, g2) = p1[k1], p2[k2]
    return CoverSolution(r1, g1, r2, g2, obj.unpack(best, bound))


def solve_naive(d1: LabeledDag, d2: LabeledDag, opts: SolverOptions = SolverOptions()) -> CoverSolution:
    """Literal four-fold loop over enumerated paths (tiny DAGs only)."""
    obj = opts.objective
    s2s = opts.source_to_sink_only
    paths1 = list(iter_paths(d1, s2s))
    paths2 = list(iter_paths(d2, s2s))
    n1, n2 = set(range(len(d1))), set(range(len(d2)))
    pairs1 = [(p, q) for p in paths1 for q in paths1
              if set(p) | set(q) == n1 and not (opts.disjoint_d1 and set(p) & set(q))]
    pairs2 = [(p, q) for p in paths2 for q in paths2
              if (not opts.require_cover_d2 or set(p) | set(q) == n2)
              and not (opts.disjoint_d2 and set(p) & set(q))]
    if not pairs1 or not pairs2:
        raise NotCoverable("no admissible pair")
    rd = lambda d, p: "".join(d.labels[v] for v in p)  # noqa: E731
    best = None
    for r1, g1 in pairs1:
        for r2, g2 in pairs2:
            v = obj.fold(edit_distance(rd(d1, r1), rd(d2, r2)), edit_distance(rd(d1, g1), rd(d2, g2)))
            cand = (v, (r1, g1, r2, g2))
            if best is None or cand < best:
                best = cand
    v, (r1, g1, r2, g2) = best
    return CoverSolution(r1, g1, r2, g2, v)


def evaluate_solution(d1: LabeledDag, d2: LabeledDag, sol: CoverSolution,
                      opts: SolverOptions = SolverOptions()):
    """Recompute the objective of ``sol`` after checking every constraint."""
    for d, p in ((d1, sol.r1), (d1, sol.g1), (d2, sol.r2), (d2, sol.g2)):
        d.check_path(p)
        if opts.source_to_sink_only and (p[0] not in d.sources or p[-1] not in d.sinks):
            raise InvalidPath(f"{list(p)} does not run from a source to a sink")
    if set(sol.r1) | set(sol.g1) != set(range(len(d1))):
        raise CoverViolated("red and green paths do not cover the first DAG")
    if opts.require_cover_d2 and set(sol.r2) | set(sol.g2) != set(range(len(d2))):
        raise CoverViolated("red and green paths do not cover the second DAG")
    if opts.disjoint_d1 and set(sol.r1) & set(sol.g1):
        raise DisjointnessViolated("paths in the first DAG share a node")
    if opts.disjoint_d2 and set(sol.r2) & set(sol.g2):
        raise DisjointnessViolated("paths in the second DAG share a node")
    rd = lambda d, p: "".join(d.labels[v] for v in p)  # noqa: E731
    return opts.objective.fold(edit_distance(rd(d1, sol.r1), rd(d2, sol.r2)),
                               edit_distance(rd(d1, sol.g1), rd(d2, sol.g2)))


# ---------------------------------------------------------------------------
# relaxed variant: dynamic programming


def best_path_for_string(d: LabeledDag, x: str, source_to_sink_only: bool = False) -> tuple[int, Path]:
    """Path of ``d`` whose read is closest to ``x`` in edit distance, with its distance.

    ``f[w][i]`` is the best cost of aligning ``x[:i]`` against a path ending
    at ``w``; ``F[w][i]`` additionally allows deleting ``x`` characters after
    ``w``.  Ties go to the smallest predecessor id.
    """
    m = len(x)
    starts = set(d.sources) if source_to_sink_only else set(range(len(d)))
    F: dict = {None: list(range(m + 1))}
    Farg: dict = {None: list(range(m + 1))}
    back: dict = {}
    for w in d.topo_order:
        lab = d.labels[w]
        row = [None] * (m + 1)
        brow = [None] * (m + 1)
        cands = ([None] if w in starts else []) + list(d.pred[w])
        for i in range(m + 1):
            for p in cands:
                Fp = F[p]
                if not lab:
                    opts = [(Fp[i], i)]
                else:
                    opts = [(Fp[i] + 1, i)]
                    if i:
                        opts.append((Fp[i - 1] + (x[i - 1] != lab), i - 1))
                for c, j in opts:
                    if row[i] is None or c < row[i]:
                        row[i], brow[i] = c, (p, j)
        if row[0] is None:
            row = [float("inf")] * (m + 1)
        Frow, Fa = row[:], list(range(m + 1))
        for i in range(1, m + 1):
            if Frow[i - 1] + 1 < Frow[i]:
                Frow[i], Fa[i] = Frow[i - 1] + 1, Fa[i - 1]
        F[w], Farg[w], back[w] = Frow, Fa, brow
    ends = d.sinks if source_to_sink_only else d.topo_order
    end = min(ends, key=lambda w: (F[w][m], w))
    cost = F[end][m]
    path = []
    w, j = end, m
    while w is not None:
        path.append(w)
        i = Farg[w][j]
        w, j = back[w][i]
    return int(cost), tuple(reversed(path))


def _d2_moves(d2: LabeledDag, source_to_sink_only: bool):
    """Min-plus closure of D2-only moves and per-character emission matrices.

    Index ``m`` stands for "second path not started yet".
    """
    m = len(d2)
    INF = np.inf
    starts = set(d2.sources) if source_to_sink_only else set(range(m))
    step = np.full((m + 1, m + 1), INF)
    for u, v in d2.arcs:
        step[u, v] = len(d2.labels[v])
    for v in starts:
        step[m, v] = len(d2.labels[v])
    K = np.full((m + 1, m + 1), INF)
    np.fill_diagonal(K, 0)
    # K is the reflexive-transitive min-plus closure of step
    for _ in range(m + 1):
        K = np.minimum(K, (K[:, :, None] + step[None, :, :]).min(axis=1))
    chars = sorted({c for lab in d2.labels for c in lab})

    def emission(c):
        S = np.full((m + 1, m + 1), INF)
        np.fill_diagonal(S, 1)
        for u, v in d2.arcs:
            if d2.labels[v]:
                S[u, v] = min(S[u, v], d2.labels[v] != c)
        for v in starts:
            if d2.labels[v]:
                S[m, v] = min(S[m, v], d2.labels[v] != c)
        return (S[:, :, None] + K[None, :, :]).min(axis=1)

    return K, emission, chars


def solve_relaxed_dp(d1: LabeledDag, d2: LabeledDag, opts: SolverOptions = SolverOptions(require_cover_d2=False)) -> CoverSolution:
    """Optimum when only the first DAG must be covered.

    Sweeps the first DAG in topological order keeping the ends of its two
    partial paths; for each, a cost matrix indexed by the current nodes of
    the two paths in the second DAG.  Edit costs are folded into min-plus
    transition matrices, so the state space is O(|V1|^2 |V2|^2).
    """
    obj = opts.objective
    if opts.require_cover_d2:
        raise InputError("the DP engine only handles the variant without covering the second DAG")
    if obj.kind not in (SUM, WEIGHTED):
        raise InputError("the DP engine supports the sum and weighted objectives")
    if opts.disjoint_d2:
        raise InputError("the DP engine does not support disjoint paths in the second DAG")
    for d in (d1, d2):
        if d.flavor not in (SIGMA, SIGMA_EPS):
            raise InputError("the DP engine needs single-character or empty labels")
    ar, ag = (1, 1) if obj.kind == SUM else (obj.alpha_red, obj.alpha_green)
    m = len(d2)
    s2s = opts.source_to_sink_only
    K, emission, _ = _d2_moves(d2, s2s)
    emit_cache: dict[str, np.ndarray] = {}

    def E(c):
        if c not in emit_cache:
            emit_cache[c] = emission(c)
        return emit_cache[c]

    order = d1.topo_order
    sources, sinks = set(d1.sources), set(d1.sinks)

    def can_take(end, v):
        if end == -1:
            return not s2s or v in sources
        return (end, v) in d1.arcs

    start = K[m]
    init = ar * start[:, None] + ag * start[None, :]
    layers = [{(-1, -1): init}]
    for v in order:
        lab = d1.labels[v]
        nxt: dict[tuple[int, int], np.ndarray] = {}
        for (er, eg), C in layers[-1].items():
            tr, tg = can_take(er, v), can_take(eg, v)
            opts_here = []
            if tr:
                opts_here.append((True, False))
            if tg:
                opts_here.append((False, True))
            if tr and tg and not opts.disjoint_d1:
                opts_here.append((True, True))
            for in_r, in_g in opts_here:
                C2 = _advance(C, lab, in_r, in_g, E, ar, ag)
                key = (v if in_r else er, v if in_g else eg)
                nxt[key] = C2 if key not in nxt else np.minimum(nxt[key], C2)
        layers.append(nxt)

    ok_w = np.ones(m + 1, dtype=bool)
    ok_w[m] = False
    if s2s:
        ok_w[:] = False
        ok_w[list(d2.sinks)] = True
    best = np.inf
    best_key = None
    for (er, eg), C in sorted(layers[-1].items()):
        if er == -1 or eg == -1:
            continue
        if s2s and (er not in sinks or eg not in sinks):
            continue
        val = C[np.ix_(ok_w, ok_w)].min() if ok_w.any() else np.inf
        if val < best:
            best, best_key = val, (er, eg)
    if best_key is None or not np.isfinite(best):
        raise NotCoverable("first DAG admits no admissible covering pair")

    red, green = _backtrack(layers, order, d1, best_key, best, ok_w, E, ar, ag, can_take, opts.disjoint_d1)
    xr = "".join(d1.labels[v] for v in red)
    xg = "".join(d1.labels[v] for v in green)
    cr, r2 = best_path_for_string(d2, xr, s2s)
    cg, g2 = best_path_for_string(d2, xg, s2s)
    value = int(best)
    if ar * cr + ag * cg != value:
        raise AssertionError("relaxed DP value disagrees with its reconstructed witness")
    return CoverSolution(red, green, r2, g2, value)


def _advance(C, lab, in_r, in_g, E, ar, ag):
    if not lab:
        return C
    M = E(lab)
    if in_r:
        C = (C[:, None, :] + ar * M[:, :, None]).min(axis=0)
    if in_g:
        C = (C[:, :, None] + ag * M[None, :, :]).min(axis=1)
    return C


def _backtrack(layers, order, d1, key, value, ok_w, E, ar, ag, can_take, disjoint):
    """Recover the two first-DAG paths of an optimal DP run."""
    C = layers[-1][key]
    masked = np.where(np.outer(ok_w, ok_w), C, np.inf)
    target = np.zeros_like(C, dtype=bool)
    target[masked == value] = True
    red, green = [], []
    for k in range(len(order) - 1, -1, -1):
        v = order[k]
        lab = d1.labels[v]
        found = None
        for (er, eg), Cp in sorted(layers[k].items()):
            tr, tg = can_take(er, v), can_take(eg, v)
            for in_r, in_g in ((True, False), (False, True), (True, True)):
                if (in_r and not tr) or (in_g and not tg) or (in_r and in_g and disjoint):
                    continue
                if (v if in_r else er, v if in_g else eg) != key:
                    continue
                C2 = _advance(Cp, lab, in_r, in_g, E, ar, ag)
                hit = target & (C2 == C)
                if hit.any():
                    # restrict to predecessor cells that reach a target cell at equal cost
                    prev_target = _pred_cells(Cp, C2, hit, lab, in_r, in_g, E, ar, ag)
                    found = ((er, eg), in_r, in_g, prev_target)
                    break
            if found:
                break
        (er, eg), in_r, in_g, prev_target = found
        if in_r:
            red.append(v)
        if in_g:
            green.append(v)
        key, C, target = (er, eg), layers[k][(er, eg)], prev_target
    return tuple(reversed(red)), tuple(reversed(green))


def _pred_cells(Cp, C2, hit, lab, in_r, in_g, E, ar, ag):
    """Cells of ``Cp`` from which some ``hit`` cell of ``C2`` is attained optimally."""
    n = Cp.shape[0]
    if not lab:
        return hit.copy()
    M = E(lab)
    out = np.zeros_like(hit)
    for yr, yg in zip(*np.nonzero(hit)):
        val = C2[yr, yg]
        for xr in range(n):
            for xg in range(n):
                c = Cp[xr, xg]
                if in_r:
                    c = c + ar * M[xr, yr]
                elif xr != yr:
                    continue
                if in_g:
                    c = c + ag * M[xg, yg]
                elif xg != yg:
                    continue
                if c == val:
                    out[xr, xg] = True
    return out
