"""Labeled DAGs: path reads, series concatenation, label expansion,
two-path coverability, and the encoding of a pairwise alignment as a DAG."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .diploid import PairwiseAlignment
from .errors import (EmptyAlignment, EmptyString, InputError, InstanceTooLarge, InvalidPath,
                     NonUniqueSink, NonUniqueSource)
from .strings_core import GAP, Alphabet

SIGMA = "Sigma"
SIGMA_EPS = "SigmaEps"
SIGMA_STAR = "SigmaStar"
SIGMA_PLUS = "SigmaPlus"
FLAVORS = (SIGMA, SIGMA_EPS, SIGMA_STAR, SIGMA_PLUS)

PATH_GUARD = 10 ** 6

Path = tuple[int, ...]


def infer_flavor(labels: Sequence[str]) -> str:
    """Most specific flavor admitting every label."""
    if all(len(x) == 1 for x in labels):
        return SIGMA
    if all(len(x) <= 1 for x in labels):
        return SIGMA_EPS
    if all(len(x) >= 1 for x in labels):
        return SIGMA_PLUS
    return SIGMA_STAR


def _flavor_admits(flavor: str, label: str) -> bool:
    return {SIGMA: len(label) == 1, SIGMA_EPS: len(label) <= 1,
            SIGMA_PLUS: len(label) >= 1, SIGMA_STAR: True}[flavor]


@dataclass(frozen=True)
class LabeledDag:
    """A DAG on nodes ``0..n-1`` with one string label per node."""

    labels: tuple[str, ...]
    arcs: frozenset[tuple[int, int]]
    flavor: str = SIGMA_STAR

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        n = len(self.labels)
        if n == 0:
            raise InputError("a labeled DAG needs at least one node")
        if self.flavor not in FLAVORS:
            raise InputError(f"unknown flavor {self.flavor!r}")
        for lab in self.labels:
            if not _flavor_admits(self.flavor, lab):
                raise InputError(f"label {lab!r} not allowed in a {self.flavor}-DAG")
        for u, v in self.arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"arc ({u},{v}) references a nonexistent node")
            if u == v:
                raise InputError(f"self-loop on node {u}")
        if len(self.topo_order) != n:
            raise InputError("arc relation contains a cycle")

    def __len__(self):
        return len(self.labels)

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.labels]
        for u, v in self.arcs:
            out[u].append(v)
        return tuple(tuple(sorted(x)) for x in out)

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.labels]
        for u, v in self.arcs:
            out[v].append(u)
        return tuple(tuple(sorted(x)) for x in out)

    @cached_property
    def topo_order(self) -> tuple[int, ...]:
        """Kahn's algorithm, smallest available index first."""
        import heapq

        indeg = [0] * len(self.labels)
        for _, v in self.arcs:
            indeg[v] += 1
        heap = [v for v, d in enumerate(indeg) if d == 0]
        heapq.heapify(heap)
        order = []
        succ = [[] for _ in self.labels]
        for u, v in self.arcs:
            succ[u].append(v)
        while heap:
            u = heapq.heappop(heap)
            order.append(u)
            for v in succ[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(heap, v)
        return tuple(order)

    @cached_property
    def sources(self) -> tuple[int, ...]:
        return tuple(v for v in range(len(self)) if not self.pred[v])

    @cached_property
    def sinks(self) -> tuple[int, ...]:
        return tuple(v for v in range(len(self)) if not self.succ[v])

    @cached_property
    def reach(self) -> tuple[int, ...]:
        """Bitset of nodes reachable from each node (excluding itself)."""
        r = [0] * len(self)
        for u in reversed(self.topo_order):
            for v in self.succ[u]:
                r[u] |= r[v] | (1 << v)
        return tuple(r)

    def reaches(self, u: int, v: int) -> bool:
        return bool(self.reach[u] >> v & 1)

    def is_path(self, path: Sequence[int]) -> bool:
        if not path or any(not 0 <= v < len(self) for v in path):
            return False
        return all((u, v) in self.arcs for u, v in zip(path, path[1:]))

    def check_path(self, path: Sequence[int]) -> Path:
        if not self.is_path(path):
            raise InvalidPath(f"{list(path)} is not a path of the DAG")
        return tuple(path)

    def to_text(self) -> str:
        lines = [f"dag {self.flavor} {len(self)}"]
        lines += [f'node {i} "{lab}"' for i, lab in enumerate(self.labels)]
        lines += [f"edge {u} {v}" for u, v in sorted(self.arcs)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CoverPair:
    red: Path
    green: Path


_NODE_RE = re.compile(r'^node (\d+) "([^"\s]*)"$')
_EDGE_RE = re.compile(r"^edge (\d+) (\d+)$")


def parse_dag(text: str, alphabet: Alphabet | None = None) -> LabeledDag:
    """Parse the line-oriented DAG format produced by :meth:`LabeledDag.to_text`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty DAG file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "dag" or head[1] not in FLAVORS or not head[2].isdigit():
        raise InputError(f"bad DAG header {lines[0]!r}")
    n = int(head[2])
    labels: list[str | None] = [None] * n
    arcs = set()
    for ln in lines[1:]:
        if m := _NODE_RE.match(ln):
            i, lab = int(m.group(1)), m.group(2)
            if i >= n or labels[i] is not None:
                raise InputError(f"bad or duplicate node id in {ln!r}")
            if GAP in lab:
                raise InputError("labels cannot contain the gap symbol")
            if alphabet is not None:
                alphabet.validate(lab)
            labels[i] = lab
        elif m := _EDGE_RE.match(ln):
            arcs.add((int(m.group(1)), int(m.group(2))))
        else:
            raise InputError(f"unrecognised DAG line {ln!r}")
    if any(lab is None for lab in labels):
        raise InputError("node ids must be dense 0..n-1")
    return LabeledDag(tuple(labels), frozenset(arcs), head[1])


def read(d: LabeledDag, path: Sequence[int]) -> str:
    """Concatenation of the labels along ``path``."""
    d.check_path(path)
    return "".join(d.labels[v] for v in path)


def line_dag(s: str) -> LabeledDag:
    if not s:
        raise EmptyString("cannot build a DAG from the empty string")
    return LabeledDag(tuple(s), frozenset((i, i + 1) for i in range(len(s) - 1)), SIGMA)


def transitive_closure_dag(s: str) -> LabeledDag:
    if not s:
        raise EmptyString("cannot build a DAG from the empty string")
    n = len(s)
    return LabeledDag(tuple(s), frozenset((i, j) for i in range(n) for j in range(i + 1, n)), SIGMA)


def concat(d1: LabeledDag, d2: LabeledDag) -> LabeledDag:
    """Disjoint union plus the arc from the unique sink of ``d1`` to the unique source of ``d2``."""
    if len(d1.sinks) != 1:
        raise NonUniqueSink(f"first DAG has {len(d1.sinks)} sinks")
    if len(d2.sources) != 1:
        raise NonUniqueSource(f"second DAG has {len(d2.sources)} sources")
    off = len(d1)
    arcs = set(d1.arcs) | {(u + off, v + off) for u, v in d2.arcs} | {(d1.sinks[0], d2.sources[0] + off)}
    labels = d1.labels + d2.labels
    flavor = d1.flavor if d1.flavor == d2.flavor else infer_flavor(labels)
    return LabeledDag(labels, frozenset(arcs), flavor)


def expand_with_map(d: LabeledDag) -> tuple[LabeledDag, tuple[Path, ...]]:
    """Replace each multi-character node by a chain of single characters.

    Returns the expanded DAG and, per original node, its chain of new ids.
    In-arcs attach to the chain head, out-arcs to the tail; empty labels stay
    as single nodes.
    """
    chains = []
    labels: list[str] = []
    for lab in d.labels:
        parts = list(lab) if len(lab) > 1 else [lab]
        chains.append(tuple(range(len(labels), len(labels) + len(parts))))
        labels.extend(parts)
    arcs = {(c[k], c[k + 1]) for c in chains for k in range(len(c) - 1)}
    arcs |= {(chains[u][-1], chains[v][0]) for u, v in d.arcs}
    return LabeledDag(tuple(labels), frozenset(arcs), infer_flavor(labels)), tuple(chains)


def expand(d: LabeledDag) -> LabeledDag:
    return expand_with_map(d)[0]


def jointly_cover(d: LabeledDag, cover: CoverPair) -> bool:
    d.check_path(cover.red)
    d.check_path(cover.green)
    return set(cover.red) | set(cover.green) == set(range(len(d)))


def _max_bipartite_matching(n: int, adj: Sequence[Sequence[int]]) -> list[int]:
    """Kuhn's augmenting-path matching; returns ``match_right[v] = u`` or -1."""
    match_right = [-1] * n

    def augment(u, seen):
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                if match_right[v] == -1 or augment(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    for u in range(n):
        augment(u, set())
    return match_right


def min_chain_cover(d: LabeledDag) -> list[list[int]]:
    """Minimum cover of the reachability order by chains (Dilworth via matching)."""
    n = len(d)
    adj = [[v for v in range(n) if d.reaches(u, v)] for u in range(n)]
    match_right = _max_bipartite_matching(n, adj)
    nxt = [-1] * n
    for v, u in enumerate(match_right):
        if u != -1:
            nxt[u] = v
    chains = []
    for v in range(n):
        if match_right[v] == -1:
            chain = [v]
            while nxt[chain[-1]] != -1:
                chain.append(nxt[chain[-1]])
            chains.append(chain)
    return chains


def width(d: LabeledDag) -> int:
    return len(min_chain_cover(d))


def _shortest_path(d: LabeledDag, u: int, v: int) -> list[int]:
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in d.succ[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    out = [v]
    while out[-1] != u:
        out.append(prev[out[-1]])
    return out[::-1]


def chain_to_path(d: LabeledDag, chain: Sequence[int]) -> Path:
    path = [chain[0]]
    for u, v in zip(chain, chain[1:]):
        path.extend(_shortest_path(d, u, v)[1:])
    return tuple(path)


def two_path_cover(d: LabeledDag) -> CoverPair | None:
    """A pair of jointly covering paths, or ``None`` when the width exceeds 2."""
    chains = min_chain_cover(d)
    if len(chains) > 2:
        return None
    paths = [chain_to_path(d, c) for c in chains]
    return CoverPair(paths[0], paths[-1])


def two_path_coverable(d: LabeledDag) -> bool:
    return two_path_cover(d) is not None


def iter_paths(d: LabeledDag, source_to_sink_only: bool = False) -> Iterator[Path]:
    """Directed paths in lexicographic order of their node sequences."""
    starts = d.sources if source_to_sink_only else range(len(d))
    sinks = set(d.sinks)

    def extend(path):
        if not source_to_sink_only or path[-1] in sinks:
            yield tuple(path)
        for v in d.succ[path[-1]]:
            path.append(v)
            yield from extend(path)
            path.pop()

    for s in starts:
        yield from extend([s])


def count_paths(d: LabeledDag, source_to_sink_only: bool = False) -> int:
    ending = [0] * len(d)
    sinks = set(d.sinks)
    for u in reversed(d.topo_order):
        ending[u] = (0 if source_to_sink_only and u not in sinks else 1) + sum(ending[v] for v in d.succ[u])
    starts = d.sources if source_to_sink_only else range(len(d))
    return sum(ending[s] for s in starts)


def enumerate_paths(d: LabeledDag, source_to_sink_only: bool = False, guard: int = PATH_GUARD) -> list[Path]:
    total = count_paths(d, source_to_sink_only)
    if total > guard:
        raise InstanceTooLarge(f"{total} paths exceed the enumeration guard {guard}")
    return list(iter_paths(d, source_to_sink_only))


def encode_diploid(a: PairwiseAlignment) -> LabeledDag:
    """Two-lane epsilon-labeled DAG whose source-to-sink cover pairs are the recombinations of ``a``.

    Node ids: source 0, column ``i`` (1-based) holds ``2i-1`` (row A) and
    ``2i`` (row B), sink ``2L+1``.
    """
    L = len(a)
    if L == 0:
        raise EmptyAlignment("cannot encode an alignment with no columns")
    labels = [""]
    for x, y in zip(a.row_a, a.row_b):
        labels.append("" if x == GAP else x)
        labels.append("" if y == GAP else y)
    labels.append("")
    A = lambda i: 2 * i - 1  # noqa: E731
    B = lambda i: 2 * i  # noqa: E731
    t = 2 * L + 1
    arcs = {(0, A(1)), (0, B(1)), (A(L), t), (B(L), t)}
    for i in range(1, L):
        arcs |= {(A(i), A(i + 1)), (A(i), B(i + 1)), (B(i), B(i + 1)), (B(i), A(i + 1))}
    return LabeledDag(tuple(labels), frozenset(arcs), SIGMA_EPS)


def is_isomorphic(d1: LabeledDag, d2: LabeledDag) -> bool:
    """Label-preserving DAG isomorphism."""
    import networkx as nx
    from networkx.algorithms.isomorphism import DiGraphMatcher

    def g(d):
        G = nx.DiGraph()
        G.add_nodes_from((v, {"label": lab}) for v, lab in enumerate(d.labels))
        G.add_edges_from(d.arcs)
        return G

    if len(d1) != len(d2) or len(d1.arcs) != len(d2.arcs):
        return False
    return DiGraphMatcher(g(d1), g(d2), node_match=lambda a, b: a["label"] == b["label"]).is_isomorphic()
