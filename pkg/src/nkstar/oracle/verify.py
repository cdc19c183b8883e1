"""Joins the router with the BFS oracle: per-pair records and sweep summaries.

Sampling uses NumPy's PCG64 generator (``numpy.random.Generator(PCG64(seed))``)
so a ``(n, k, samples, seed)`` run draws the same pairs on every platform.
"""

from __future__ import annotations

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Sequence, TextIO

import numpy as np

from nkstar.oracle.bounds import theorem_bound
from nkstar.oracle.search import (
    DEFAULT_MAX_NODES,
    bfs_distance,
    oriented_graph,
    pair_distances,
)
from nkstar.router import RoutingError, route_length
from nkstar.star_graph import GraphParams, NodeLabel, all_labels, check_label

log = logging.getLogger(__name__)

FAILED = -1  # routed length recorded when the router exceeds its hop cap


@dataclass(frozen=True)
class PairRecord:
    routed_length: int
    bfs_distance: int
    bound: int
    ok: bool


@dataclass(frozen=True)
class VerifyRow:
    n: int
    k: int
    pairs_checked: int
    max_routed: int
    max_bfs: int | None
    bound: int
    ok: bool


VERIFY_COLUMNS = tuple(f.name for f in fields(VerifyRow))


def verify_pair(s: Sequence[int], t: Sequence[int], params: GraphParams) -> PairRecord:
    s, t = check_label(s, params), check_label(t, params)
    bound = theorem_bound(params.n, params.k)
    routed = route_length(s, t, params)
    dist = bfs_distance(s, t, params)
    return PairRecord(routed, dist, bound, 0 <= dist <= routed <= bound)


def sample_pairs(params: GraphParams, samples: int, seed: int) -> np.ndarray:
    """``samples`` ordered pairs of rank ids, drawn uniformly with replacement."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.integers(0, params.num_nodes, size=(samples, 2), dtype=np.int64)


def _route_chunk(args) -> list[int]:
    params, labels, pairs, max_moves = args
    out = []
    for i, j in pairs:
        try:
            out.append(route_length(labels[i], labels[j], params, max_moves))
        except RoutingError:
            out.append(FAILED)
    return out


def route_lengths(params: GraphParams, labels: Sequence[NodeLabel], pairs: np.ndarray,
                  max_moves: int | None = None, workers: int = 1) -> np.ndarray:
    """Router hop counts for rank-id pairs; ``FAILED`` where routing gave up."""
    pairs = [tuple(map(int, p)) for p in pairs]
    if workers <= 1 or len(pairs) < 2 * workers:
        return np.array(_route_chunk((params, labels, pairs, max_moves)), dtype=np.int64)
    size = -(-len(pairs) // (4 * workers))
    chunks = [(params, labels, pairs[i:i + size], max_moves) for i in range(0, len(pairs), size)]
    with ProcessPoolExecutor(workers) as pool:
        parts = list(pool.map(_route_chunk, chunks))
    return np.array([x for part in parts for x in part], dtype=np.int64)


def _summarize(params: GraphParams, routed: np.ndarray, dist: np.ndarray | None, bound: int) -> VerifyRow:
    ok = bool((routed >= 0).all() and (routed <= bound).all())
    if dist is not None:
        ok = ok and bool(((dist >= 0) & (dist <= routed)).all())
    return VerifyRow(
        params.n, params.k, len(routed),
        int(routed.max(initial=0)),
        None if dist is None else int(dist.max(initial=0)),
        bound, ok,
    )


def _report_failures(labels, pairs, routed, dist, bound) -> None:
    bad = (routed < 0) | (routed > bound)
    if dist is not None:
        bad |= (dist < 0) | (dist > routed)
    for idx in np.nonzero(bad)[0][:10]:
        s, t = labels[pairs[idx][0]], labels[pairs[idx][1]]
        d = None if dist is None else int(dist[idx])
        log.error("pair %s -> %s: routed=%d bfs=%s bound=%d", s, t, routed[idx], d, bound)


def _verify(params: GraphParams, pairs: np.ndarray, max_moves: int | None, workers: int,
            max_nodes: int) -> VerifyRow:
    params.require_orientable()
    bound = theorem_bound(params.n, params.k)
    labels = tuple(all_labels(params))
    routed = route_lengths(params, labels, pairs, max_moves, workers)
    dist = None
    if params.num_nodes <= max_nodes:
        dist = pair_distances(oriented_graph(params, max_nodes), pairs)
    else:
        log.warning("S(%d,%d) exceeds the node budget; skipping BFS distances", params.n, params.k)
    row = _summarize(params, routed, dist, bound)
    if not row.ok:
        _report_failures(labels, pairs, routed, dist, bound)
    return row


def verify_all_pairs(params: GraphParams, max_moves: int | None = None, workers: int = 1,
                     max_nodes: int = DEFAULT_MAX_NODES) -> VerifyRow:
    """Route every ordered pair of distinct nodes; target-major so the step cache is reused."""
    n = params.num_nodes
    t, s = np.divmod(np.arange(n * n, dtype=np.int64), n)
    keep = s != t
    pairs = np.stack([s[keep], t[keep]], axis=1)
    return _verify(params, pairs, max_moves, workers, max_nodes)


def verify_sampled(params: GraphParams, samples: int, seed: int, max_moves: int | None = None,
                   workers: int = 1, max_nodes: int = DEFAULT_MAX_NODES) -> VerifyRow:
    return _verify(params, sample_pairs(params, samples, seed), max_moves, workers, max_nodes)


def write_verify_csv(rows: Sequence[VerifyRow], out: TextIO) -> None:
    w = csv.DictWriter(out, fieldnames=VERIFY_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        d = asdict(r)
        d["max_bfs"] = "" if r.max_bfs is None else r.max_bfs
        d["ok"] = str(r.ok).lower()
        w.writerow(d)
