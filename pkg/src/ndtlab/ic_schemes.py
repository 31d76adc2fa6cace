"""NDT of cache-aided interference networks (no fronthaul).

Schemes:

* ``ndt_nma``   symmetric splitting, one-shot IC + ZF
* ``ndt_hnd``   symmetric splitting, coded multicasting + IA
* ``ndt_xtl``   parametric splitting optimised by an LP (joint IC, ZF, IA)
* ``ndt_lower_bound``  converse for uncoded prefetching

NMA and HND are defined at integer cache points only; elsewhere they are
extended by memory sharing, i.e. the lower convex envelope over all
integer points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ndtlab.core import NetworkConfig, binom, xmulticast_dof
from ndtlab.errors import InfeasibleCacheSizes
from ndtlab.lp import EnvelopePoint, LinearProgram, lower_convex_envelope, solve_lp


@dataclass(frozen=True)
class SplitTable:
    """File-splitting parameters a_{r,t}, keyed by (r, t)."""

    k_t: int
    k_r: int
    a: dict

    def __getitem__(self, key):
        return self.a.get(key, Fraction(0))

    def total(self):
        return sum(binom(self.k_r, r) * binom(self.k_t, t) * v for (r, t), v in self.a.items())

    def ue_load(self):
        return sum(binom(self.k_r - 1, r - 1) * binom(self.k_t, t) * v
                   for (r, t), v in self.a.items() if r >= 1)

    def en_load(self):
        return sum(binom(self.k_r, r) * binom(self.k_t - 1, t - 1) * v
                   for (r, t), v in self.a.items() if t >= 1)

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.a.items()) if v != 0}


@dataclass(frozen=True)
class LowerBoundWitness:
    l: int
    s1: int
    s2: int
    value: Fraction


def _require_cover(cfg: NetworkConfig):
    if not cfg.covers_library:
        raise InfeasibleCacheSizes(
            f"mu_r + k_t*mu_t = {cfg.mu_r + cfg.k_t * cfg.mu_t} < 1: "
            "the caches cannot hold the library without fronthaul")


def _nma_integer(k_t, k_r, i, j):
    mu_r = Fraction(i, k_r)
    return k_r * (1 - mu_r) / min(k_r, i + j)


def ndt_nma(cfg: NetworkConfig):
    _require_cover(cfg)
    k_t, k_r = cfg.k_t, cfg.k_r
    if cfg.mu_r == 1:
        return Fraction(0)
    i, j = cfg.k_r * cfg.mu_r, cfg.k_t * cfg.mu_t
    if i.denominator == 1 and j.denominator == 1:
        return _nma_integer(k_t, k_r, int(i), int(j))
    # Integer points with mu_r + k_t mu_t >= 1: every j >= 1, plus (K_R, 0).
    points = [EnvelopePoint((Fraction(i, k_r), Fraction(j, k_t)), _nma_integer(k_t, k_r, i, j))
              for i in range(k_r + 1) for j in range(1, k_t + 1)]
    points.append(EnvelopePoint((Fraction(1), Fraction(0)), Fraction(0)))
    return lower_convex_envelope(points, (cfg.mu_r, cfg.mu_t))


def _hnd_integer(k_t, k_r, i):
    mu_r = Fraction(i, k_r)
    return (k_t - 1 + Fraction(k_r, i + 1)) / k_t * (1 - mu_r)


def ndt_hnd(cfg: NetworkConfig):
    """HND scheme; each EN uses only 1/K_T of every file, so mu_T beyond
    that point does not matter."""
    if cfg.mu_t < Fraction(1, cfg.k_t):
        raise InfeasibleCacheSizes(f"HND needs mu_t >= 1/k_t, got {cfg.mu_t}")
    i = cfg.k_r * cfg.mu_r
    if i.denominator == 1:
        return _hnd_integer(cfg.k_t, cfg.k_r, int(i))
    points = [EnvelopePoint((Fraction(i, cfg.k_r),), _hnd_integer(cfg.k_t, cfg.k_r, i))
              for i in range(cfg.k_r + 1)]
    return lower_convex_envelope(points, (cfg.mu_r,))


def split_index_set(k_t: int, k_r: int) -> list:
    """All (r, t) with r + K_R t >= K_R, in lexicographic order."""
    return [(r, t) for r in range(k_r + 1) for t in range(k_t + 1) if r + k_r * t >= k_r]


def xtl_program(cfg: NetworkConfig):
    """The LP over a_{r,t}; returns (program, index list)."""
    k_t, k_r = cfg.k_t, cfg.k_r
    index = split_index_set(k_t, k_r)
    cost = []
    for r, t in index:
        if r <= k_r - 1 and t >= 1:
            cost.append(binom(k_r - 1, r) * binom(k_t, t) / xmulticast_dof(cfg, r, t))
        else:
            cost.append(Fraction(0))
    total = [binom(k_r, r) * binom(k_t, t) for r, t in index]
    ue = [binom(k_r - 1, r - 1) * binom(k_t, t) if r >= 1 else 0 for r, t in index]
    en = [binom(k_r, r) * binom(k_t - 1, t - 1) if t >= 1 else 0 for r, t in index]
    lp = LinearProgram(
        objective=cost,
        eq_constraints=[(total, 1)],
        ineq_constraints=[(ue, cfg.mu_r), (en, cfg.mu_t)],
        bounds=[(0, 1)] * len(index),
    )
    return lp, index


def ndt_xtl(cfg: NetworkConfig):
    """Optimal parametric split; returns (ndt, SplitTable)."""
    _require_cover(cfg)
    lp, index = xtl_program(cfg)
    sol = solve_lp(lp)
    if not sol.optimal:
        raise InfeasibleCacheSizes(f"XTL program is {sol.status.value} at {cfg}")
    table = SplitTable(cfg.k_t, cfg.k_r, dict(zip(index, sol.x)))
    return sol.objective_value, table


# Each region: (affine value, list of constraints). A constraint is
# (a_r, a_t, rhs, op) meaning a_r*mu_r + a_t*mu_t  op  rhs.
_XTL_3X3_REGIONS = [
    ((1, -1, 0), [(1, 1, 1, ">="), (1, 0, 1, "<="), (0, 1, 1, "<=")]),
    ((Fraction(4, 3), Fraction(-4, 3), Fraction(-1, 3)),
     [(1, 1, 1, "<"), (2, 1, 1, ">="), (1, 2, 1, ">")]),
    ((Fraction(3, 2), Fraction(-5, 3), Fraction(-1, 2)),
     [(3, 3, 2, ">="), (2, 1, 1, "<"), (1, 0, 0, ">=")]),
    ((Fraction(13, 6), Fraction(-8, 3), Fraction(-3, 2)),
     [(3, 3, 2, "<"), (1, 0, 0, ">="), (0, 3, 1, ">")]),
    ((Fraction(8, 3), Fraction(-8, 3), -3),
     [(0, 3, 1, "<="), (1, 2, 1, "<="), (1, 3, 1, ">=")]),
]


def _holds(con, mu_r, mu_t, closed):
    a_r, a_t, rhs, op = con
    lhs = a_r * mu_r + a_t * mu_t
    if op == ">=" or (closed and op == ">"):
        return lhs >= rhs
    if op == "<=" or (closed and op == "<"):
        return lhs <= rhs
    return lhs > rhs if op == ">" else lhs < rhs


def xtl_3x3_regions(mu_r, mu_t, closed: bool = False) -> list:
    """1-based indices of the regions containing the point (their closures if ``closed``)."""
    out = []
    for k, (_, cons) in enumerate(_XTL_3X3_REGIONS, start=1):
        if all(_holds(c, mu_r, mu_t, closed) for c in cons):
            out.append(k)
    return out


def xtl_3x3_region_value(k: int, mu_r, mu_t):
    c0, c_r, c_t = _XTL_3X3_REGIONS[k - 1][0]
    return c0 + c_r * mu_r + c_t * mu_t


def ndt_xtl_closed_form_3x3(mu_r, mu_t):
    """Piecewise-affine XTL value for K_T = K_R = 3."""
    if not (0 <= mu_r <= 1 and 0 <= mu_t <= 1) or mu_r + 3 * mu_t < 1:
        raise InfeasibleCacheSizes(f"({mu_r}, {mu_t}) is outside the feasible region")
    regions = xtl_3x3_regions(mu_r, mu_t)
    if not regions:
        # Mixed strictness leaves some boundary points uncovered.
        regions = xtl_3x3_regions(mu_r, mu_t, closed=True)
    if not regions:
        raise InfeasibleCacheSizes(f"({mu_r}, {mu_t}) lies in no region")
    return min(xtl_3x3_region_value(k, mu_r, mu_t) for k in regions)


def _lower_bracket(cfg, l, s1, s2):
    mu_r, mu_t, k_t = cfg.mu_r, cfg.mu_t, cfg.k_t
    spill = max(Fraction(0), 1 - k_t * mu_t)
    val = ((s1 + s2)
           - (k_t - l) * s2 * mu_t
           - (Fraction(2 * s2 + s1 + 1, 2) * s1 + s2 * s2) * mu_r
           + (Fraction(2 * s2 + s1, 2) * (s1 - 1) + s2 * s2) * spill)
    return val / l


def ndt_lower_bound(cfg: NetworkConfig):
    """Exhaustive maximisation of the uncoded-prefetching converse."""
    best = None
    for l in range(1, min(cfg.k_t, cfg.k_r) + 1):
        for s1 in range(l + 1):
            for s2 in range(cfg.k_r - l + 1):
                v = _lower_bracket(cfg, l, s1, s2)
                if best is None or v > best.value:
                    best = LowerBoundWitness(l, s1, s2, v)
    return best.value, best
