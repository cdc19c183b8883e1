"""Closed-form diameter bounds for the oriented (n,k)-star graph."""

from __future__ import annotations

import csv
from dataclasses import asdict, dataclass
from typing import IO, Iterable

from nkstar.star_graph import GraphParams, undirected_diameter_formula


def _check(n: int, k: int) -> None:
    if not (k >= 3 and n - k >= 2):
        raise ValueError(f"bound needs k >= 3 and n - k >= 2 (n={n}, k={k})")


def delta(n: int, k: int) -> int:
    """Regime-dependent reduction term of the routing bound."""
    _check(n, k)
    if 2 * k > n:
        return 2 * k - n
    if 3 * k > n:
        return 0
    return (n - 3 * k) // 2


def theorem_bound(n: int, k: int) -> int:
    return (n + k) // 2 + 2 * k + 6 - delta(n, k)


def cheng_lipman(n: int, k: int) -> int:
    GraphParams(n, k)
    if k <= n // 2:
        return 10 * k - 5
    return 5 * k + 5 * ((n - 1) // 2)


def cheng_kruk(n: int, k: int) -> int:
    # Comparison-table reading; the abstract prints a garbled variant.
    GraphParams(n, k)
    if (n - k) % 2:
        return 6 * (k - 3) + 13
    return 7 * (k - 3) + 18


def prior_bounds(n: int, k: int) -> tuple[int, int]:
    return cheng_lipman(n, k), cheng_kruk(n, k)


def k_only_bound(n: int, k: int) -> int:
    """Worst case of the routing bound over the regime of ``n`` relative to ``2k``."""
    if n < 2 * k:
        return (7 * k) // 2 + 6
    return 4 * k + 6


@dataclass
class BoundReport:
    n: int
    k: int
    undirected_diam: int
    delta: int
    thm_bound: int
    cheng_lipman: int
    cheng_kruk: int
    k_only: int
    bfs_directed_diam: int | None = None
    max_routed_length: int | None = None
    strongly_connected: bool | None = None


def bound_report(n: int, k: int) -> BoundReport:
    return BoundReport(
        n=n,
        k=k,
        undirected_diam=undirected_diameter_formula(GraphParams(n, k)),
        delta=delta(n, k),
        thm_bound=theorem_bound(n, k),
        cheng_lipman=cheng_lipman(n, k),
        cheng_kruk=cheng_kruk(n, k),
        k_only=k_only_bound(n, k),
    )


def bounds_table(n_max: int) -> list[BoundReport]:
    if n_max < 5:
        raise ValueError("n_max must be at least 5")
    return [bound_report(n, k) for n in range(5, n_max + 1) for k in range(3, n - 1)]


BOUNDS_COLUMNS = ("n", "k", "undirected_diam", "delta", "thm_bound", "cheng_lipman", "cheng_kruk")


def write_bounds_csv(rows: Iterable[BoundReport], fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(BOUNDS_COLUMNS)
    for r in rows:
        d = asdict(r)
        w.writerow([d[c] for c in BOUNDS_COLUMNS])
