"""Edge orientation of the (n,k)-star graph and the structure of oriented cliques.

Star edges follow the parity of the endpoint: an even node sends along its
left-half positions, an odd node along its right-half positions.  Clique edges
go from the larger head to the smaller one between nodes of equal parity, and
from the smaller head to the larger one otherwise.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from nkstar.permutation import Parity
from nkstar.star_graph import (
    GraphParams,
    NodeLabel,
    check_label,
    clique_neighbors,
    parity,
    star_neighbors,
)


class Arc(NamedTuple):
    src: NodeLabel
    dst: NodeLabel
    kind: str  # "star" or "clique"
    position: int | None = None  # star edge label i


def star_edge_outgoing(par: Parity, i: int, split: int) -> bool:
    """Whether a node of parity ``par`` sends along star position ``i``."""
    return (i <= split) == (par is Parity.EVEN)


def clique_arc(head_a: int, par_a: Parity, head_b: int, par_b: Parity) -> bool:
    """Whether the clique edge between heads ``a`` and ``b`` points a -> b."""
    if par_a == par_b:
        return head_a > head_b
    return head_a < head_b


def direction_of_star_edge(u: Sequence[int], i: int, params: GraphParams) -> Arc:
    params.require_orientable()
    u = check_label(u, params)
    if not 2 <= i <= params.k:
        raise ValueError(f"star position {i} outside 2..{params.k}")
    v = list(u)
    v[0], v[i - 1] = v[i - 1], v[0]
    v = tuple(v)
    if star_edge_outgoing(parity(u, params.n), i, params.split):
        return Arc(u, v, "star", i)
    return Arc(v, u, "star", i)


def direction_of_clique_edge(u: Sequence[int], v: Sequence[int], params: GraphParams) -> Arc:
    params.require_orientable()
    u, v = check_label(u, params), check_label(v, params)
    if u[1:] != v[1:] or u[0] == v[0]:
        raise ValueError(f"{u} and {v} are not clique neighbours")
    if clique_arc(u[0], parity(u, params.n), v[0], parity(v, params.n)):
        return Arc(u, v, "clique")
    return Arc(v, u, "clique")


def out_neighbors(u: Sequence[int], params: GraphParams) -> list[Arc]:
    """All arcs leaving ``u``: star arcs by position, then clique arcs by head."""
    params.require_orientable()
    u = tuple(u)
    par = parity(u, params.n)
    arcs = [
        Arc(u, v, "star", i)
        for i, v in star_neighbors(u)
        if star_edge_outgoing(par, i, params.split)
    ]
    for v in clique_neighbors(u, params):
        if clique_arc(u[0], par, v[0], parity(v, params.n)):
            arcs.append(Arc(u, v, "clique"))
    return arcs


@dataclass(frozen=True)
class OrientedClique:
    """The oriented fundamental clique shared by all nodes with a given arm.

    Members are identified by their head value; ``heads`` is ascending and
    ``parities[i]`` is the parity of the member with head ``heads[i]``.
    """

    params: GraphParams
    arm: tuple[int, ...]
    heads: tuple[int, ...]
    parities: tuple[Parity, ...]

    def member(self, j: int) -> NodeLabel:
        if j not in self.heads:
            raise ValueError(f"{j} is not a head of this clique")
        return (j,) + self.arm

    def parity_of(self, j: int) -> Parity:
        return self.parities[self.heads.index(j)]

    @property
    def n_even(self) -> int:
        return sum(1 for p in self.parities if p is Parity.EVEN)

    @property
    def n_odd(self) -> int:
        return len(self.parities) - self.n_even

    @cached_property
    def successors(self) -> dict[int, tuple[int, ...]]:
        pairs = list(zip(self.heads, self.parities))
        return {
            a: tuple(b for b, pb in pairs if b != a and clique_arc(a, pa, b, pb))
            for a, pa in pairs
        }

    def arcs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, succ in self.successors.items() for b in succ]

    def has_arc(self, a: int, b: int) -> bool:
        return b in self.successors[a]


def oriented_clique(v: Sequence[int], params: GraphParams) -> OrientedClique:
    params.require_orientable()
    v = check_label(v, params)
    heads = sorted([v[0]] + [w[0] for w in clique_neighbors(v, params)])
    arm = v[1:]
    pars = tuple(parity((j,) + arm, params.n) for j in heads)
    return OrientedClique(params, arm, tuple(heads), pars)


def _distances_to(succ: dict[int, tuple[int, ...]], target: int, skip: frozenset) -> dict[int, int]:
    # BFS on reversed arcs.
    pred: dict[int, list[int]] = {a: [] for a in succ}
    for a, bs in succ.items():
        for b in bs:
            pred[b].append(a)
    dist = {target: 0}
    queue = deque([target])
    while queue:
        b = queue.popleft()
        for a in pred[b]:
            if a not in dist and a not in skip:
                dist[a] = dist[b] + 1
                queue.append(a)
    return dist


def shortest_head_path(
    q: OrientedClique, x: int, y: int, avoid: Sequence[int] = ()
) -> tuple[int, ...] | None:
    """Lexicographically smallest shortest path of heads from ``x`` to ``y``.

    Intermediate members listed in ``avoid`` are not used; returns None when no
    such path exists.
    """
    skip = frozenset(avoid) - {x, y}
    dist = _distances_to(q.successors, y, skip)
    if x not in dist:
        return None
    path = [x]
    while path[-1] != y:
        d = dist[path[-1]]
        path.append(min(b for b in q.successors[path[-1]] if dist.get(b) == d - 1))
    return tuple(path)


def clique_shortest_path(v: Sequence[int] | OrientedClique, x: int, y: int,
                         params: GraphParams | None = None) -> tuple[int, ...]:
    """Shortest directed path between two members of an oriented clique.

    ``v`` is either the clique itself or any member label (then ``params`` is
    required).  Ties go to the lexicographically smallest head sequence.
    """
    q = v if isinstance(v, OrientedClique) else oriented_clique(v, params)
    if x not in q.heads or y not in q.heads:
        raise ValueError(f"heads {x}, {y} must both belong to the clique {q.heads}")
    if x == y:
        raise ValueError("path endpoints must differ")
    path = shortest_head_path(q, x, y)
    assert path is not None, "oriented clique is not strongly connected"
    return path


@dataclass
class CliqueAudit:
    heads: tuple[int, ...]
    claims: dict[str, bool]
    details: list[str]

    @property
    def ok(self) -> bool:
        return all(self.claims.values())


def audit_clique(q: OrientedClique) -> CliqueAudit:
    """Check out-degree, parity balance/alternation and the short-cycle cover."""
    n, k = q.params.n, q.params.k
    details = []
    min_out = (n - k) // 2
    low = [j for j in q.heads if len(q.successors[j]) < min_out]
    if low:
        details.append(f"out-degree below {min_out} at heads {low}")

    alternating = all(q.parities[i] != q.parities[i + 1] for i in range(len(q.heads) - 1))
    if not alternating:
        details.append("parities do not alternate along sorted heads")

    diff = abs(q.n_even - q.n_odd)
    balanced = diff == 0 if (n - k) % 2 else diff == 1
    if not balanced:
        details.append(f"n_even={q.n_even}, n_odd={q.n_odd}")

    succ = q.successors
    on_triangle = {
        (a, b): any(a in succ[c] for c in succ[b]) for a, b in q.arcs()
    }
    missing = sorted(arc for arc, ok in on_triangle.items() if not ok)
    jmin, jmax = q.heads[0], q.heads[-1]
    if (n - k) % 2:
        expected = [(jmin, jmax)]
        four_cycle = q.has_arc(jmin, jmax) and any(
            jmin in succ[d] for c in succ[jmax] for d in succ[c] if d not in (jmin, jmax)
        )
    else:
        expected = []
        four_cycle = True
    cover_ok = missing == expected and four_cycle
    if not cover_ok:
        details.append(f"arcs off 3-cycles: {missing}, expected {expected}; 4-cycle={four_cycle}")

    claims = {
        "out_degree": not low,
        "sign_alternation": alternating,
        "sign_counts": balanced,
        "cycle_cover": cover_ok,
    }
    return CliqueAudit(q.heads, claims, details)


def all_cliques(params: GraphParams) -> list[OrientedClique]:
    """One oriented clique per distinct arm, ordered by arm."""
    out = []
    for arm in itertools.permutations(range(1, params.n + 1), params.k - 1):
        h = min(x for x in range(1, params.n + 1) if x not in arm)
        out.append(oriented_clique((h,) + arm, params))
    return out
