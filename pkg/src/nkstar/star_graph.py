"""The (n,k)-star graph: labels, dense ids, neighbours and the diameter formula.

A node is labelled by a k-permutation of ``1..n`` (a tuple of ``k`` distinct
values).  Its extended label appends the unused values in ascending order, which
gives a permutation of ``1..n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from nkstar.permutation import Parity, last_left_position, sign

NodeLabel = tuple[int, ...]


@dataclass(frozen=True)
class GraphParams:
    n: int
    k: int
    _falling: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and isinstance(self.k, int)):
            raise TypeError("n and k must be integers")
        if not 1 <= self.k < self.n:
            raise ValueError(f"need 1 <= k < n, got n={self.n}, k={self.k}")
        # _falling[i] = number of ways to fill positions i+1..k given i+1 used symbols
        falling = [1] * self.k
        for i in range(self.k - 2, -1, -1):
            falling[i] = falling[i + 1] * (self.n - i - 1)
        object.__setattr__(self, "_falling", tuple(falling))

    @property
    def orientable(self) -> bool:
        return self.k >= 3 and self.n - self.k >= 2

    def require_orientable(self) -> None:
        if not self.orientable:
            raise ValueError(
                f"orientation and routing need k >= 3 and n - k >= 2 (n={self.n}, k={self.k})"
            )

    @property
    def num_nodes(self) -> int:
        return self._falling[0] * self.n

    @property
    def split(self) -> int:
        """Last position of the left half of the arm."""
        return last_left_position(self.k)

    @cached_property
    def left_positions(self) -> tuple[int, ...]:
        return tuple(range(2, self.split + 1))

    @cached_property
    def right_positions(self) -> tuple[int, ...]:
        return tuple(range(self.split + 1, self.k + 1))


def check_label(label: Sequence[int], params: GraphParams) -> NodeLabel:
    label = tuple(label)
    if len(label) != params.k:
        raise ValueError(f"label {label} must have {params.k} symbols")
    if any(not 1 <= x <= params.n for x in label):
        raise ValueError(f"label {label} has a symbol outside 1..{params.n}")
    if len(set(label)) != params.k:
        raise ValueError(f"label {label} repeats a symbol")
    return label


def extend(label: Sequence[int], n: int) -> tuple[int, ...]:
    """Extended label: the k symbols followed by the unused ones, ascending."""
    used = set(label)
    return tuple(label) + tuple(x for x in range(1, n + 1) if x not in used)


def parity(label: Sequence[int], n: int) -> Parity:
    return sign(extend(label, n))


def head(label: Sequence[int]) -> int:
    return label[0]


def arm(label: Sequence[int]) -> tuple[int, ...]:
    return tuple(label[1:])


def left_half(label: Sequence[int]) -> tuple[int, ...]:
    return tuple(label[1 : last_left_position(len(label))])


def right_half(label: Sequence[int]) -> tuple[int, ...]:
    return tuple(label[last_left_position(len(label)) :])


def tail_end(label: Sequence[int], n: int) -> tuple[int, ...]:
    return extend(label, n)[len(label) :]


def rank(label: Sequence[int], params: GraphParams) -> int:
    """Lexicographic rank of ``label`` among all k-permutations of ``1..n``."""
    label = check_label(label, params)
    r = 0
    used = 0  # bitmask of symbols already placed
    for i, x in enumerate(label):
        smaller_free = (x - 1) - bin(used & ((1 << x) - 1)).count("1")
        r += smaller_free * params._falling[i]
        used |= 1 << x
    return r


def unrank(node_id: int, params: GraphParams) -> NodeLabel:
    if not 0 <= node_id < params.num_nodes:
        raise ValueError(f"id {node_id} outside 0..{params.num_nodes - 1}")
    free = list(range(1, params.n + 1))
    out = []
    for i in range(params.k):
        q, node_id = divmod(node_id, params._falling[i])
        out.append(free.pop(q))
    return tuple(out)


def all_labels(params: GraphParams) -> Iterator[NodeLabel]:
    """Every node label, in rank order."""
    return itertools.permutations(range(1, params.n + 1), params.k)


def star_neighbors(u: Sequence[int]) -> list[tuple[int, NodeLabel]]:
    """``(i, v)`` for each star edge; ``v`` swaps positions 1 and ``i`` of ``u``."""
    out = []
    for i in range(2, len(u) + 1):
        v = list(u)
        v[0], v[i - 1] = v[i - 1], v[0]
        out.append((i, tuple(v)))
    return out


def clique_neighbors(u: Sequence[int], params: GraphParams) -> list[NodeLabel]:
    """Labels obtained by replacing the head with each unused symbol, by head value."""
    used = set(u)
    rest = tuple(u[1:])
    return [(x,) + rest for x in range(1, params.n + 1) if x not in used]


def neighbors(u: Sequence[int], params: GraphParams) -> list[NodeLabel]:
    return [v for _, v in star_neighbors(u)] + clique_neighbors(u, params)


def undirected_diameter_formula(params: GraphParams) -> int:
    n, k = params.n, params.k
    if k <= n // 2:
        return 2 * k - 1
    return k + (n - 1) // 2


def edge_list(params: GraphParams) -> list[tuple[NodeLabel, NodeLabel, str]]:
    """Each undirected edge once, smaller endpoint first, sorted by endpoint ranks."""
    edges = []
    for u in all_labels(params):
        for _, v in star_neighbors(u):
            if u < v:
                edges.append((u, v, "star"))
        for v in clique_neighbors(u, params):
            if u < v:
                edges.append((u, v, "clique"))
    # Tuple order on labels coincides with rank order.
    edges.sort()
    return edges
