"""Per-trace audits of the counting argument behind the routing bound."""

from __future__ import annotations

from dataclasses import dataclass, field

from nkstar.oracle.bounds import theorem_bound
from nkstar.router import MoveKind, RouteTrace, move_context

_NON_STAR = (MoveKind.CLIQUE, MoveKind.SEED_CLIQUE, MoveKind.SEED_STAR)


@dataclass
class TraceAudit:
    claims: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.claims.values())

    def check(self, name: str, passed: bool, message: str) -> None:
        self.claims[name] = self.claims.get(name, True) and passed
        if not passed:
            self.failures.append(f"{name}: {message}")


def alpha_limit(de: int, n: int, k: int) -> int:
    half = (n - k) // 2
    return max(de - half, 0) + 2 * min(de, half) + 2


def beta_limit(dl: int, dr: int, k: int) -> int:
    return 2 * max(dl, dr) + k


def audit_trace(trace: RouteTrace) -> TraceAudit:
    """Check the alternating-cycle and move-count inequalities on one route."""
    audit = TraceAudit()
    n, k = trace.params.n, trace.params.k
    chi = trace.chi

    for m, step in enumerate(trace.steps, 1):
        if step.kind in _NON_STAR:
            audit.check(
                "chi_non_increasing",
                chi[m] <= chi[m - 1],
                f"step {m} ({step.kind.value}) raised chi {chi[m - 1]} -> {chi[m]}",
            )
    audit.claims.setdefault("chi_non_increasing", True)

    m3 = trace.m3
    rise = sum(
        chi[m] - chi[m - 1]
        for m, step in enumerate(trace.steps, 1)
        if m <= m3 and step.kind.is_star
    )
    audit.check("star_chi_rise", rise <= 1, f"net chi increase {rise} over star moves up to m3={m3}")

    audit.check("gamma1", trace.gamma1 <= 2, f"gamma1={trace.gamma1} > 2")
    audit.check(
        "gamma2",
        trace.gamma2 <= 2 + chi[0],
        f"gamma2={trace.gamma2} > 2 + chi_t(s)={2 + chi[0]}",
    )

    ctx = move_context(trace.source, trace.target, trace.params)
    a_lim = alpha_limit(len(ctx.DE), n, k)
    audit.check("alpha", trace.alpha <= a_lim, f"alpha={trace.alpha} > {a_lim}")
    b_lim = beta_limit(len(ctx.DL), len(ctx.DR), k)
    audit.check("beta", trace.beta <= b_lim, f"beta={trace.beta} > {b_lim}")

    bound = theorem_bound(n, k)
    audit.check("length", trace.m_L <= bound, f"m_L={trace.m_L} > {bound}")
    return audit


def audit_phases(trace: RouteTrace) -> TraceAudit:
    """Shape of the DL/DR evolution that delimits the four phases."""
    audit = TraceAudit()
    dl, dr = trace.dl, trace.dr
    for m in range(1, trace.m_L + 1):
        audit.check(
            "monotone",
            dl[m] <= dl[m - 1] and dr[m] <= dr[m - 1],
            f"DL/DR grew at step {m}: ({dl[m - 1]},{dr[m - 1]}) -> ({dl[m]},{dr[m]})",
        )
    for m in range(trace.m2, trace.m3):
        audit.check(
            "one_sided",
            (dl[m] == 0) != (dr[m] == 0),
            f"step {m}: DL={dl[m]}, DR={dr[m]} inside the asymmetric phase",
        )
    audit.claims.setdefault("monotone", True)
    audit.claims.setdefault("one_sided", True)
    return audit
