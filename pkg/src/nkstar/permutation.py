"""Permutations of [n] with 1-indexed positions.

A permutation is stored as a tuple of images: ``p[i - 1]`` is the value at
position ``i``.  Since positions and values share the range ``1..n`` the same
tuple also acts as a map on values, which is what cycle traversal uses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

Permutation = tuple[int, ...]


class Parity(enum.IntEnum):
    EVEN = 0
    ODD = 1

    def flipped(self) -> "Parity":
        return Parity(1 - self)


def validate(p: Sequence[int]) -> Permutation:
    p = tuple(p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation of 1..{len(p)}: {format_perm(p)}")
    return p


def format_perm(p: Sequence[int]) -> str:
    return "-".join(str(x) for x in p)


def parse_perm(text: str) -> tuple[int, ...]:
    """Parse a dash-separated value list such as ``7-2-3-4-5``."""
    try:
        return tuple(int(tok) for tok in text.strip().split("-"))
    except ValueError:
        raise ValueError(f"malformed label {text!r}") from None


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for pos, val in enumerate(p, 1):
        inv[val - 1] = pos
    return tuple(inv)


def inversion_count(p: Sequence[int]) -> int:
    # O(n^2); kept as an independent check on sign().
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def sign(p: Sequence[int]) -> Parity:
    """Parity of ``p``, computed as ``n - (number of cycles)`` mod 2."""
    n = len(p)
    seen = bytearray(n + 1)
    cycles = 0
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cycles += 1
        a = start
        while not seen[a]:
            seen[a] = 1
            a = p[a - 1]
    return Parity((n - cycles) & 1)


def apply_transposition(p: Sequence[int], a: int, b: int) -> Permutation:
    """Exchange the images at positions ``a`` and ``b``."""
    n = len(p)
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"positions ({a}, {b}) out of range 1..{n}")
    if a == b:
        raise ValueError("transposition needs two distinct positions")
    q = list(p)
    q[a - 1], q[b - 1] = q[b - 1], q[a - 1]
    return tuple(q)


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint cycles of a permutation, fixed points included.

    Each cycle starts at its smallest value and cycles are ordered by that
    value.  ``value_to_cycle[a - 1]`` is the index of the cycle holding ``a``.
    """

    cycles: tuple[tuple[int, ...], ...]
    value_to_cycle: tuple[int, ...]

    def cycle_of(self, a: int) -> tuple[int, ...]:
        return self.cycles[self.value_to_cycle[a - 1]]

    def same_cycle(self, a: int, b: int) -> bool:
        return self.value_to_cycle[a - 1] == self.value_to_cycle[b - 1]

    def __len__(self) -> int:
        return len(self.cycles)


def cycle_decompose(p: Sequence[int]) -> CycleDecomposition:
    n = len(p)
    owner = [-1] * n
    cycles = []
    # Scanning starts in increasing order, so every cycle is entered at its minimum.
    for start in range(1, n + 1):
        if owner[start - 1] >= 0:
            continue
        cyc = []
        a = start
        while owner[a - 1] < 0:
            owner[a - 1] = len(cycles)
            cyc.append(a)
            a = p[a - 1]
        cycles.append(tuple(cyc))
    return CycleDecomposition(tuple(cycles), tuple(owner))


def traverse_cycle(p: Sequence[int], a: int, direction: str = "forward") -> tuple[int, ...]:
    """List ``a, p(a), p^2(a), ...`` (or the inverse powers) for one period."""
    if not 1 <= a <= len(p):
        raise ValueError(f"value {a} out of range 1..{len(p)}")
    if direction == "forward":
        step = p
    elif direction == "backward":
        step = inverse(p)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    out = [a]
    x = step[a - 1]
    while x != a:
        out.append(x)
        x = step[x - 1]
    return tuple(out)


def lead(p: Sequence[int], k: int) -> Permutation:
    """Leader of the class of ``p``: positions ``k+1..n`` sorted ascending."""
    if not 1 <= k < len(p):
        raise ValueError(f"k={k} outside 1..{len(p) - 1}")
    return tuple(p[:k]) + tuple(sorted(p[k:]))


def last_left_position(k: int) -> int:
    """Largest position of the left half of the arm, ``ceil((k-1)/2) + 1``."""
    return k // 2 + 1


def alternating_cycle_count(c: Sequence[int], t: Sequence[int], k: int) -> int:
    """Number of cycles of ``c`` whose members alternate between ULR and URL.

    ULR holds unsettled arm values sitting in the left half of ``c`` that
    belong to the right half of ``t``; URL is the mirror set.  Only cycles of
    length at least two count.
    """
    n = len(c)
    if len(t) != n:
        raise ValueError("c and t must be permutations of the same size")
    if not 1 <= k < n:
        raise ValueError(f"k={k} outside 1..{n - 1}")
    side = _unsettled_side(c, t, k)
    count = 0
    for cyc in cycle_decompose(c).cycles:
        if len(cyc) < 2 or len(cyc) % 2:
            continue
        tags = [side.get(a) for a in cyc]
        if tags[0] is None:
            continue
        if all(tags[i] is not None and tags[i] != tags[i - 1] for i in range(len(cyc))):
            count += 1
    return count


def _unsettled_side(c: Sequence[int], t: Sequence[int], k: int) -> dict[int, str]:
    # value -> "LR" (in ULR) or "RL" (in URL)
    split = last_left_position(k)
    t_pos = {v: i for i, v in enumerate(t[:k], 1)}
    side = {}
    for i in range(2, k + 1):
        v = c[i - 1]
        j = t_pos.get(v)
        if j is None or j == i or j == 1:
            continue
        if i <= split < j:
            side[v] = "LR"
        elif j <= split < i:
            side[v] = "RL"
    return side

