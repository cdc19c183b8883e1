"""Distributed next-hop routing on the oriented (n,k)-star graph.

``route_step`` looks only at the current node and the destination, so a packet
can be forwarded hop by hop without carrying any state.  ``route`` runs it to
completion and records the bookkeeping used by the trace audits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Sequence

from nkstar.oracle.bounds import theorem_bound
from nkstar.orientation import OrientedClique, oriented_clique, shortest_head_path
from nkstar.permutation import (
    Parity,
    alternating_cycle_count,
    cycle_decompose,
    format_perm,
    sign,
    traverse_cycle,
)
from nkstar.star_graph import GraphParams, NodeLabel, check_label, extend


class RoutingError(RuntimeError):
    pass


class MoveKind(str, enum.Enum):
    CLIQUE = "clique_move"
    STAR_SETTLING = "star_settling"
    STAR_CROSSING = "star_crossing"
    SEED_CLIQUE = "seed_clique"
    SEED_STAR = "seed_star"

    @property
    def is_star(self) -> bool:
        return self in (MoveKind.STAR_SETTLING, MoveKind.STAR_CROSSING)


class Move(NamedTuple):
    node: NodeLabel  # the node reached
    kind: MoveKind
    case: str
    position: int  # position of the current label swapped with position 1


@dataclass(frozen=True)
class MoveContext:
    """Value sets describing current node ``c`` relative to destination ``t``."""

    I: frozenset[int]
    IA: frozenset[int]
    E: frozenset[int]
    DI: frozenset[int]
    DE: frozenset[int]
    DEA: frozenset[int]
    DEL: frozenset[int]
    DER: frozenset[int]
    S: frozenset[int]
    SL: frozenset[int]
    SR: frozenset[int]
    U: frozenset[int]
    ULL: frozenset[int]
    URR: frozenset[int]
    ULR: frozenset[int]
    URL: frozenset[int]
    # partitions of c and t
    head: int
    left: frozenset[int]
    right: frozenset[int]
    tail: frozenset[int]
    t_head: int
    t_left: frozenset[int]
    t_right: frozenset[int]

    @property
    def DL(self) -> frozenset[int]:
        return self.ULL | self.DEL

    @property
    def DR(self) -> frozenset[int]:
        return self.URR | self.DER


def _context(cx: tuple[int, ...], tx: tuple[int, ...], k: int, split: int) -> MoveContext:
    I = frozenset(tx[:k])
    IA = frozenset(tx[1:k])
    E = frozenset(tx[k:])
    left = frozenset(cx[1:split])
    right = frozenset(cx[split:k])
    tail = frozenset(cx[k:])
    t_left = frozenset(tx[1:split])
    t_right = frozenset(tx[split:k])
    settled = frozenset(cx[i] for i in range(1, k) if cx[i] == tx[i])
    unsettled = frozenset(cx[i] for i in range(1, k) if cx[i] != tx[i] and cx[i] in I)
    return MoveContext(
        I=I,
        IA=IA,
        E=E,
        DI=I & tail,
        DE=E & frozenset(cx[:k]),
        DEA=E & (left | right),
        DEL=E & left,
        DER=E & right,
        S=settled,
        SL=settled & t_left,
        SR=settled & t_right,
        U=unsettled,
        ULL=unsettled & left & t_left,
        URR=unsettled & right & t_right,
        ULR=unsettled & left & t_right,
        URL=unsettled & right & t_left,
        head=cx[0],
        left=left,
        right=right,
        tail=tail,
        t_head=tx[0],
        t_left=t_left,
        t_right=t_right,
    )


def move_context(c: Sequence[int], t: Sequence[int], params: GraphParams) -> MoveContext:
    c, t = check_label(c, params), check_label(t, params)
    return _context(extend(c, params.n), extend(t, params.n), params.k, params.split)


def _swap_head(c: NodeLabel, i: int) -> NodeLabel:
    v = list(c)
    v[0], v[i - 1] = v[i - 1], v[0]
    return tuple(v)


def _position(cx: tuple[int, ...], y: int) -> int:
    return cx.index(y) + 1


def _best_clique_path(q: OrientedClique, x: int, targets, avoid=()) -> tuple[int, ...] | None:
    best = None
    for z in targets:
        path = shortest_head_path(q, x, z)
        if avoid:
            detour = shortest_head_path(q, x, z, avoid)
            if detour is None or len(detour) != len(path):
                continue
            path = detour
        key = (len(path), path)
        if best is None or key < best:
            best = key
    return None if best is None else best[1]


def _clique_hop(c: NodeLabel, cx: tuple[int, ...], y: int, kind: MoveKind, case: str) -> Move:
    # Swapping the head with a tail value and re-sorting the tail is the same
    # as replacing the head of the k-label.
    return Move((y,) + c[1:], kind, case, _position(cx, y))


def _seed_clique(c, cx, ctx: MoveContext, params: GraphParams) -> Move:
    q = oriented_clique(c, params)
    succ = q.successors[c[0]]
    direct = [y for y in succ if y in ctx.I]
    if direct:
        return _clique_hop(c, cx, min(direct), MoveKind.SEED_CLIQUE, "1")
    path = _best_clique_path(q, c[0], sorted(ctx.DI))
    if path is None:
        raise RoutingError(f"seed-clique at {format_perm(c)}: no displaced internal value")
    assert path[1] in ctx.E
    return _clique_hop(c, cx, path[1], MoveKind.SEED_CLIQUE, "2")


def _clique_move(c, cx, ctx: MoveContext, params: GraphParams) -> Move:
    q = oriented_clique(c, params)
    succ = q.successors[c[0]]
    iax = [y for y in succ if y in ctx.IA]
    if iax:
        return _clique_hop(c, cx, min(iax), MoveKind.CLIQUE, "1")
    iat = sorted(ctx.IA & ctx.tail)
    if iat:
        path = _best_clique_path(q, c[0], iat, avoid=(ctx.t_head,))
        case = "2.1"
        if path is None:
            path = _best_clique_path(q, c[0], iat)
            case = "2.2"
        return _clique_hop(c, cx, path[1], MoveKind.CLIQUE, case)
    # The head is external, so some internal value sits in the tail; with no
    # arm value of t there, it must be t's head.
    if ctx.t_head not in ctx.tail:
        raise RoutingError(f"clique-move at {format_perm(c)}: destination head not reachable")
    path = shortest_head_path(q, c[0], ctx.t_head)
    return _clique_hop(c, cx, path[1], MoveKind.CLIQUE, "3")


class _Side(NamedTuple):
    """Sets seen by a node that swaps along one half of its arm."""

    own_t: frozenset[int]  # half of t that this parity settles into
    displaced: frozenset[int]  # DEL or DER
    unsettled_same: frozenset[int]  # ULL or URR
    unsettled_other_same: frozenset[int]  # URR or ULL
    settled: frozenset[int]  # SL or SR
    unsettled_cross: frozenset[int]  # ULR or URL
    active: frozenset[int]  # L(c) or R(c)


def _side(ctx: MoveContext, par: Parity) -> _Side:
    if par is Parity.EVEN:
        return _Side(ctx.t_left, ctx.DEL, ctx.ULL, ctx.URR, ctx.SL, ctx.ULR, ctx.left)
    return _Side(ctx.t_right, ctx.DER, ctx.URR, ctx.ULL, ctx.SR, ctx.URL, ctx.right)


def _seed_star(c, cx, ctx: MoveContext, par: Parity) -> Move:
    side = _side(ctx, par)
    if not side.unsettled_same and not side.unsettled_other_same:
        if not side.unsettled_cross:
            raise RoutingError(f"seed-star at {format_perm(c)}: nothing left to seed")
        i = _position(cx, min(side.unsettled_cross))
        return Move(_swap_head(c, i), MoveKind.SEED_STAR, "1", i)
    for pool in (side.unsettled_same, side.settled, side.unsettled_cross):
        if pool:
            y = min(pool)
            i = _position(cx, y)
            return Move(_swap_head(c, i), MoveKind.SEED_STAR, "2", i)
    raise RoutingError(f"seed-star at {format_perm(c)}: empty active half")


def _alternating_members(cx: tuple[int, ...], ctx: MoveContext) -> set[int]:
    members = set()
    for cyc in cycle_decompose(cx).cycles:
        if len(cyc) < 2 or len(cyc) % 2:
            continue
        tags = [0 if a in ctx.ULR else 1 if a in ctx.URL else None for a in cyc]
        if None in tags:
            continue
        if all(tags[i] != tags[i - 1] for i in range(len(cyc))):
            members.update(cyc)
    return members


def _star_move(c, cx, tx, ctx: MoveContext, par: Parity) -> Move:
    side = _side(ctx, par)
    x = c[0]
    if x in side.own_t:
        i = tx.index(x) + 1
        return Move(_swap_head(c, i), MoveKind.STAR_SETTLING, "1", i)

    psi = set(traverse_cycle(cx, x))
    pending = side.displaced | side.unsettled_same

    def cross(y: int, case: str) -> Move:
        i = _position(cx, y)
        return Move(_swap_head(c, i), MoveKind.STAR_CROSSING, case, i)

    outside = [y for y in pending if y not in psi]
    if outside:
        return cross(min(outside), "2.1")
    if pending:
        for y in traverse_cycle(cx, x, "backward"):
            if y in pending:
                return cross(y, "2.2")
    if side.settled:
        return cross(min(side.settled), "2.3")
    cross_pool = side.unsettled_cross
    if cross_pool:
        alt = _alternating_members(cx, ctx)
        free = [y for y in cross_pool if y not in psi]
        in_alt = [y for y in free if y in alt]
        if in_alt:
            return cross(min(in_alt), "2.4")
        if free:
            return cross(min(free), "2.5")
        return cross(min(cross_pool), "2.6")
    # Only the destination head is left in the active half (possible when that
    # half has a single position).  Parking x there brings t's head forward.
    if ctx.t_head in side.active:
        return cross(ctx.t_head, "2.7")
    raise RoutingError(f"star-move at {format_perm(c)}: crossing ladder exhausted")


@lru_cache(maxsize=1 << 18)
def _step(c: NodeLabel, t: NodeLabel, params: GraphParams) -> Move:
    n, k = params.n, params.k
    cx, tx = extend(c, n), extend(t, n)
    ctx = _context(cx, tx, k, params.split)
    if c[0] == t[0]:
        if ctx.DEA:
            return _seed_clique(c, cx, ctx, params)
        return _seed_star(c, cx, ctx, sign(cx))
    if c[0] in ctx.E:
        return _clique_move(c, cx, ctx, params)
    return _star_move(c, cx, tx, ctx, sign(cx))


def _checked(c, t, params: GraphParams) -> tuple[NodeLabel, NodeLabel]:
    params.require_orientable()
    c, t = check_label(c, params), check_label(t, params)
    if c == t:
        raise ValueError("current node is the destination; nothing to route")
    return c, t


def route_step(c: Sequence[int], t: Sequence[int], params: GraphParams) -> Move:
    """Next hop from ``c`` towards ``t``."""
    return _step(*_checked(c, t, params), params)


def seed_clique(c, t, params: GraphParams) -> Move:
    c, t = _checked(c, t, params)
    ctx = move_context(c, t, params)
    if c[0] != t[0] or not ctx.DEA:
        raise ValueError("seed-clique needs the destination head and an external arm value")
    return _seed_clique(c, extend(c, params.n), ctx, params)


def seed_star(c, t, params: GraphParams) -> Move:
    c, t = _checked(c, t, params)
    ctx = move_context(c, t, params)
    if c[0] != t[0] or ctx.DEA:
        raise ValueError("seed-star needs the destination head and no external arm value")
    cx = extend(c, params.n)
    return _seed_star(c, cx, ctx, sign(cx))


def clique_move(c, t, params: GraphParams) -> Move:
    c, t = _checked(c, t, params)
    ctx = move_context(c, t, params)
    if c[0] not in ctx.E:
        raise ValueError("clique-move needs an external head")
    return _clique_move(c, extend(c, params.n), ctx, params)


def star_move(c, t, params: GraphParams) -> Move:
    c, t = _checked(c, t, params)
    ctx = move_context(c, t, params)
    if c[0] not in ctx.I or c[0] == t[0]:
        raise ValueError("star-move needs an internal head other than the destination head")
    cx = extend(c, params.n)
    return _star_move(c, cx, extend(t, params.n), ctx, sign(cx))


class NodeStats(NamedTuple):
    chi: int
    dl: int
    dr: int
    di: int


@lru_cache(maxsize=1 << 18)
def _stats(c: NodeLabel, t: NodeLabel, params: GraphParams) -> NodeStats:
    cx, tx = extend(c, params.n), extend(t, params.n)
    ctx = _context(cx, tx, params.k, params.split)
    return NodeStats(
        alternating_cycle_count(cx, tx, params.k), len(ctx.DL), len(ctx.DR), len(ctx.DI)
    )


def node_stats(c, t, params: GraphParams) -> NodeStats:
    return _stats(check_label(c, params), check_label(t, params), params)


@dataclass
class RouteTrace:
    params: GraphParams
    source: NodeLabel
    target: NodeLabel
    steps: list[Move] = field(default_factory=list)
    chi: list[int] = field(default_factory=list)  # chi_t(b(m)) for m = 0..m_L
    dl: list[int] = field(default_factory=list)
    dr: list[int] = field(default_factory=list)
    di: list[int] = field(default_factory=list)

    @property
    def m_L(self) -> int:
        return len(self.steps)

    def node(self, m: int) -> NodeLabel:
        return self.source if m == 0 else self.steps[m - 1].node

    def _count(self, *kinds: MoveKind) -> int:
        return sum(1 for s in self.steps if s.kind in kinds)

    @property
    def alpha(self) -> int:
        return self._count(MoveKind.CLIQUE)

    @property
    def beta(self) -> int:
        return self._count(MoveKind.STAR_SETTLING, MoveKind.STAR_CROSSING)

    @property
    def gamma1(self) -> int:
        return self._count(MoveKind.SEED_CLIQUE)

    @property
    def gamma2(self) -> int:
        return self._count(MoveKind.SEED_STAR)

    @property
    def m1(self) -> int:
        # Transient phase exists only while both DL and DR are non-empty.
        if not (self.dl[0] and self.dr[0]):
            return 0
        size0 = self.dl[0] + self.dr[0]
        m = 0
        while m + 1 <= self.m_L and self.dl[m + 1] + self.dr[m + 1] == size0:
            m += 1
        return m

    @property
    def m2(self) -> int:
        return next(m for m in range(self.m1, self.m_L + 1) if not self.dl[m] or not self.dr[m])

    @property
    def m3(self) -> int:
        return next(m for m in range(self.m2, self.m_L + 1) if not self.dl[m] and not self.dr[m])

    @property
    def m_zd(self) -> int:
        return next(m for m in range(self.m_L + 1) if self.di[m] == 0)

    def to_json(self) -> dict:
        return {
            "n": self.params.n,
            "k": self.params.k,
            "source": format_perm(self.source),
            "target": format_perm(self.target),
            "steps": [
                {
                    "node": format_perm(s.node),
                    "move": s.kind.value,
                    "case": s.case,
                    "i": s.position,
                    "head": s.node[0],
                }
                for s in self.steps
            ],
            "stats": {
                "alpha": self.alpha,
                "beta": self.beta,
                "gamma1": self.gamma1,
                "gamma2": self.gamma2,
                "m1": self.m1,
                "m2": self.m2,
                "m3": self.m3,
                "m_zd": self.m_zd,
                "m_L": self.m_L,
                "chi": list(self.chi),
            },
        }


def route(s: Sequence[int], t: Sequence[int], params: GraphParams,
          max_moves: int | None = None) -> RouteTrace:
    """Route from ``s`` to ``t``; raises RoutingError past ``max_moves`` hops.

    The default budget is the proven upper bound on the route length.
    """
    params.require_orientable()
    s, t = check_label(s, params), check_label(t, params)
    if max_moves is None:
        max_moves = theorem_bound(params.n, params.k)
    trace = RouteTrace(params, s, t)
    c = s
    while True:
        st = _stats(c, t, params)
        trace.chi.append(st.chi)
        trace.dl.append(st.dl)
        trace.dr.append(st.dr)
        trace.di.append(st.di)
        if c == t:
            return trace
        if len(trace.steps) >= max_moves:
            raise RoutingError(
                f"{format_perm(s)} -> {format_perm(t)} exceeded {max_moves} moves"
            )
        move = _step(c, t, params)
        trace.steps.append(move)
        c = move.node


def route_length(s: Sequence[int], t: Sequence[int], params: GraphParams,
                 max_moves: int | None = None) -> int:
    """Number of hops taken by the router, without recording a trace."""
    if max_moves is None:
        max_moves = theorem_bound(params.n, params.k)
    c, t = tuple(s), tuple(t)
    m = 0
    while c != t:
        if m >= max_moves:
            raise RoutingError(f"{format_perm(s)} -> {format_perm(t)} exceeded {max_moves} moves")
        c = _step(c, t, params).node
        m += 1
    return m


PHASES = ("transient", "symmetric_crossing", "asymmetric_crossing", "settling")


def phase_of(m: int, trace: RouteTrace) -> str:
    if not 0 <= m <= trace.m_L:
        raise ValueError(f"move index {m} outside 0..{trace.m_L}")
    if m <= trace.m1:
        return PHASES[0]
    if m <= trace.m2:
        return PHASES[1]
    if m <= trace.m3:
        return PHASES[2]
    return PHASES[3]
