"""Brute-force graph search over the materialized (oriented) star graph.

Nodes are indexed by lexicographic rank.  All-pairs sweeps run a bit-parallel
BFS: each source owns one bit of a ``uint64`` word, so 64 sources advance
together per word and one level costs a gather plus an OR-reduction over the
in-arcs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from nkstar.orientation import out_neighbors
from nkstar.star_graph import GraphParams, NodeLabel, all_labels, check_label, neighbors

DEFAULT_MAX_NODES = 50_000
# Words of 64 sources processed per block; bounds the gather buffer to E * 64 * 8 bytes.
_BLOCK_WORDS = 64


class MemoryBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class DenseGraph:
    """Arc list in CSR form over rank ids; ``indptr``/``indices`` hold out-arcs."""

    params: GraphParams
    labels: tuple[NodeLabel, ...]
    indptr: np.ndarray
    indices: np.ndarray

    @property
    def num_nodes(self) -> int:
        return len(self.labels)

    @property
    def num_arcs(self) -> int:
        return len(self.indices)

    def matrix(self) -> csr_matrix:
        data = np.ones(self.num_arcs, dtype=np.int8)
        n = self.num_nodes
        return csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def reversed(self) -> DenseGraph:
        t = self.matrix().T.tocsr()
        t.sort_indices()
        return DenseGraph(self.params, self.labels, t.indptr.astype(np.int64), t.indices.astype(np.int64))


def _check_budget(params: GraphParams, max_nodes: int) -> None:
    if params.num_nodes > max_nodes:
        raise MemoryBudgetError(
            f"S({params.n},{params.k}) has {params.num_nodes} nodes, budget is {max_nodes}"
        )


def graph_from_arcs(params: GraphParams, arcs: Iterable[tuple[Sequence[int], Sequence[int]]],
                    labels: Sequence[NodeLabel] | None = None) -> DenseGraph:
    """CSR graph from explicit ``(src, dst)`` label pairs (used for corrupted copies)."""
    labels = tuple(all_labels(params)) if labels is None else tuple(labels)
    ids = {u: i for i, u in enumerate(labels)}
    src, dst = [], []
    for u, v in arcs:
        src.append(ids[tuple(u)])
        dst.append(ids[tuple(v)])
    n = len(labels)
    m = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    m.sum_duplicates()
    m.sort_indices()
    return DenseGraph(params, labels, m.indptr.astype(np.int64), m.indices.astype(np.int64))


def oriented_arcs(params: GraphParams) -> list[tuple[NodeLabel, NodeLabel]]:
    return [(a.src, a.dst) for u in all_labels(params) for a in out_neighbors(u, params)]


def oriented_graph(params: GraphParams, max_nodes: int = DEFAULT_MAX_NODES) -> DenseGraph:
    _check_budget(params, max_nodes)
    return graph_from_arcs(params, oriented_arcs(params))


def undirected_graph(params: GraphParams, max_nodes: int = DEFAULT_MAX_NODES) -> DenseGraph:
    """Both directions of every edge."""
    _check_budget(params, max_nodes)
    return graph_from_arcs(params, ((u, v) for u in all_labels(params) for v in neighbors(u, params)))


def check_strong_connectivity(params: GraphParams | DenseGraph,
                              max_nodes: int = DEFAULT_MAX_NODES) -> tuple[bool, tuple[NodeLabel, NodeLabel] | None]:
    """Whether every node reaches every other; otherwise an unreachable ``(u, v)``."""
    g = params if isinstance(params, DenseGraph) else oriented_graph(params, max_nodes)
    n_comp, _ = connected_components(g.matrix(), directed=True, connection="strong")
    if n_comp == 1:
        return True, None
    # Node 0 either misses some target or is missed by some source.
    reached = np.zeros(g.num_nodes, dtype=bool)
    reached[breadth_first_order(g.matrix(), 0, directed=True, return_predecessors=False)] = True
    if not reached.all():
        return False, (g.labels[0], g.labels[int(np.argmin(reached))])
    back = np.zeros(g.num_nodes, dtype=bool)
    back[breadth_first_order(g.matrix().T.tocsr(), 0, directed=True, return_predecessors=False)] = True
    return False, (g.labels[int(np.argmin(back))], g.labels[0])


class _InArcs:
    """Gather-and-reduce helper for one BFS level over in-arcs."""

    def __init__(self, g: DenseGraph):
        rev = g.reversed()
        self.n = g.num_nodes
        self.preds = rev.indices
        deg = np.diff(rev.indptr)
        self.has_pred = deg > 0
        self.starts = rev.indptr[:-1][self.has_pred]

    def advance(self, frontier: np.ndarray) -> np.ndarray:
        out = np.zeros_like(frontier)
        if len(self.preds):
            out[self.has_pred] = np.bitwise_or.reduceat(frontier[self.preds], self.starts, axis=0)
        return out


def _seed(sources: np.ndarray, n: int) -> np.ndarray:
    words = (len(sources) + 63) // 64
    bits = np.zeros((n, words), dtype=np.uint64)
    j = np.arange(len(sources))
    np.bitwise_or.at(bits, (sources, j // 64), np.left_shift(np.uint64(1), (j % 64).astype(np.uint64)))
    return bits


def _source_blocks(n: int) -> Iterable[np.ndarray]:
    step = 64 * _BLOCK_WORDS
    for lo in range(0, n, step):
        yield np.arange(lo, min(lo + step, n))


def _low_bit(word: np.uint64) -> int:
    w = int(word)
    return (w & -w).bit_length() - 1


def bfs_diameter(g: DenseGraph) -> tuple[float, tuple[NodeLabel, NodeLabel]]:
    """Largest BFS distance over ordered pairs, and a pair attaining it.

    Returns ``inf`` with an unreachable pair when the graph is not strongly
    connected.
    """
    step = _InArcs(g)
    n = g.num_nodes
    best, best_pair = 0, (g.labels[0], g.labels[0])
    for sources in _source_blocks(n):
        visited = _seed(sources, n)
        frontier = visited.copy()
        level = 0
        while True:
            new = step.advance(frontier) & ~visited
            if not new.any():
                break
            level += 1
            visited |= new
            frontier = new
            if level > best:
                v, w = (int(a[0]) for a in np.nonzero(new))
                s = sources[64 * w + _low_bit(new[v, w])]
                best, best_pair = level, (g.labels[s], g.labels[v])
        missing = ~visited & _all_source_bits(len(sources))
        if missing.any():
            v, w = (int(a[0]) for a in np.nonzero(missing))
            s = sources[64 * w + _low_bit(missing[v, w])]
            return float("inf"), (g.labels[s], g.labels[v])
    return best, best_pair


def _all_source_bits(count: int) -> np.ndarray:
    words = (count + 63) // 64
    mask = np.full(words, np.uint64(0xFFFFFFFFFFFFFFFF), dtype=np.uint64)
    if count % 64:
        mask[-1] = np.uint64((1 << (count % 64)) - 1)
    return mask


def bfs_distance_matrix(g: DenseGraph, max_nodes: int = 4096) -> np.ndarray:
    """Full ``dist[s, v]`` matrix (``-1`` when unreachable); small graphs only."""
    n = g.num_nodes
    if n > max_nodes:
        raise MemoryBudgetError(f"distance matrix for {n} nodes exceeds budget {max_nodes}")
    step = _InArcs(g)
    dist = np.full((n, n), -1, dtype=np.int16)
    for sources in _source_blocks(n):
        visited = _seed(sources, n)
        frontier = visited.copy()
        dist[sources, sources] = 0
        level = 0
        while True:
            new = step.advance(frontier) & ~visited
            if not new.any():
                break
            level += 1
            visited |= new
            frontier = new
            hit = np.unpackbits(new.view(np.uint8), axis=1, bitorder="little")[:, : len(sources)]
            v_idx, s_idx = np.nonzero(hit)
            dist[sources[s_idx], v_idx] = level
    return dist


def directed_diameter(params: GraphParams, max_nodes: int = DEFAULT_MAX_NODES) -> tuple[float, tuple[NodeLabel, NodeLabel]]:
    return bfs_diameter(oriented_graph(params, max_nodes))


def undirected_diameter(params: GraphParams, max_nodes: int = DEFAULT_MAX_NODES) -> tuple[float, tuple[NodeLabel, NodeLabel]]:
    return bfs_diameter(undirected_graph(params, max_nodes))


def bfs_distance(s: Sequence[int], t: Sequence[int], params: GraphParams) -> int:
    """Directed distance by a plain queue BFS over labels; -1 if ``t`` is unreachable."""
    params.require_orientable()
    s, t = check_label(s, params), check_label(t, params)
    if s == t:
        return 0
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for a in out_neighbors(u, params):
            if a.dst not in dist:
                if a.dst == t:
                    return dist[u] + 1
                dist[a.dst] = dist[u] + 1
                queue.append(a.dst)
    return -1


def pair_distances(g: DenseGraph, pairs: np.ndarray) -> np.ndarray:
    """BFS distance for each rank-id pair, sweeping sources in bit-parallel blocks."""
    pairs = np.asarray(pairs, dtype=np.int64)
    dist = np.full(len(pairs), -1, dtype=np.int64)
    if not len(pairs):
        return dist
    step = _InArcs(g)
    sources = np.unique(pairs[:, 0])
    block = 64 * _BLOCK_WORDS
    for lo in range(0, len(sources), block):
        src = sources[lo:lo + block]
        sel = np.nonzero(np.isin(pairs[:, 0], src))[0]
        j = np.searchsorted(src, pairs[sel, 0])
        word, bit = j // 64, (j % 64).astype(np.uint64)
        tgt = pairs[sel, 1]
        dist[sel[pairs[sel, 0] == tgt]] = 0
        visited = _seed(src, g.num_nodes)
        frontier = visited.copy()
        level = 0
        while True:
            new = step.advance(frontier) & ~visited
            if not new.any():
                break
            level += 1
            visited |= new
            frontier = new
            hit = ((new[tgt, word] >> bit) & np.uint64(1)).astype(bool)
            dist[sel[hit]] = level
    return dist
