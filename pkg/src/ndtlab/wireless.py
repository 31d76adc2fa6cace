"""F-RAN with a shared wireless fronthaul and random placement everywhere.

Demanded subfiles are grouped by (m, n), the number of UEs and ENs caching
them. Each group is delivered on its own: groups with n = 0 are multicast
to every EN, the others may fetch extra copies over the fronthaul to raise
the EN cooperation level by ``i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ndtlab.core import NetworkConfig, binom, decentralized_fraction, xmulticast_dof
from ndtlab.errors import NonIntegerCachePoint, UnsupportedTopology, ZeroFronthaul, ZeroFronthaulRequired

GAP_LIMIT = 12


@dataclass(frozen=True)
class GroupNdt:
    m: int
    n: int
    best_i: int
    fronthaul: Fraction
    access: Fraction

    @property
    def total(self):
        return self.fronthaul + self.access


@dataclass(frozen=True)
class WirelessBounds:
    upper: Fraction
    lower: Fraction
    gap: object
    l1_star: int
    l2_star: int
    groups: list = field(default_factory=list, compare=False)

    @property
    def within_gap(self) -> bool:
        return self.lower == 0 or self.gap <= GAP_LIMIT


def group_option(cfg: NetworkConfig, m: int, n: int, i: int, f=None) -> tuple:
    """(fronthaul, access) of group (m, n) with cooperation boost i >= 0, n >= 1."""
    k_t, k_r = cfg.k_t, cfg.k_r
    f = decentralized_fraction(cfg, m, n) if f is None else f
    access = binom(k_r - 1, m) * binom(k_t, n) * f / xmulticast_dof(cfg, m, n + i)
    if i == 0:
        return Fraction(0), access
    load = binom(k_r, m + 1) * binom(k_t, n) * min(Fraction(1), Fraction(i, n + 1)) * f
    if load == 0:
        return Fraction(0), access
    if cfg.r_w == 0:
        return None, access
    return load / cfg.r_w, access


def tau_group(cfg: NetworkConfig, m: int, n: int) -> GroupNdt:
    k_t, k_r = cfg.k_t, cfg.k_r
    f = decentralized_fraction(cfg, m, n)
    if n == 0:
        if f == 0:
            return GroupNdt(m, 0, k_t, Fraction(0), Fraction(0))
        if cfg.r_w == 0:
            raise ZeroFronthaulRequired(
                f"group ({m},0) has content at no EN but r_w = 0")
        return GroupNdt(m, 0, k_t, binom(k_r, m + 1) * f / cfg.r_w,
                        binom(k_r - 1, m) * f / xmulticast_dof(cfg, m, k_t))
    best = None
    for i in range(k_t - n + 1):
        fr, ac = group_option(cfg, m, n, i, f)
        if fr is None:
            continue
        if best is None or fr + ac < best.total:
            best = GroupNdt(m, n, i, fr, ac)
    return best


def ndt_wireless_upper(cfg: NetworkConfig) -> tuple:
    groups = [tau_group(cfg, m, n) for m in range(cfg.k_r) for n in range(cfg.k_t + 1)]
    return sum((g.total for g in groups), Fraction(0)), groups


def upper_split(groups) -> tuple:
    """(fronthaul, access) totals of a group breakdown."""
    return (sum((g.fronthaul for g in groups), Fraction(0)),
            sum((g.access for g in groups), Fraction(0)))


def upper_limit_infinite_rate(cfg: NetworkConfig) -> Fraction:
    """Upper bound as r_W grows without limit (also its mu_T = 1 value)."""
    k_r, mu_r = cfg.k_r, cfg.mu_r
    return sum((binom(k_r - 1, m) * mu_r ** m * (1 - mu_r) ** (k_r - m) / xmulticast_dof(cfg, m, cfg.k_t)
                for m in range(k_r)), Fraction(0))


def ndt_wireless_lower(cfg: NetworkConfig) -> tuple:
    if cfg.r_w == 0:
        raise ZeroFronthaul("the lower bound needs r_w > 0")
    k_t, k_r, mu_t, mu_r = cfg.k_t, cfg.k_r, cfg.mu_t, cfg.mu_r
    # ties go to the larger l
    fr = [(l * (1 - mu_t) ** k_t * (1 - mu_r) ** l / cfg.r_w, l) for l in range(1, k_r + 1)]
    ac = [(l * (1 - mu_r) ** l / min(l, k_t), l) for l in range(1, k_r + 1)]
    v1, l1 = max(fr)
    v2, l2 = max(ac)
    return v1 + v2, l1, l2


def gap_ratio(upper, lower):
    if lower == 0:
        return Fraction(1) if upper == 0 else math.inf
    return upper / lower


def gap_check(cfg: NetworkConfig) -> WirelessBounds:
    upper, groups = ndt_wireless_upper(cfg)
    lower, l1, l2 = ndt_wireless_lower(cfg)
    gap = gap_ratio(upper, lower)
    bounds = WirelessBounds(upper, lower, gap, l1, l2, groups)
    if lower > 0 and gap > GAP_LIMIT:
        raise AssertionError(f"gap {float(gap):.4f} exceeds {GAP_LIMIT} at {cfg}")
    return bounds


def ndt_kstk(cfg: NetworkConfig) -> Fraction:
    """2x2 EN-cache-only benchmark under full duplex."""
    if (cfg.k_t, cfg.k_r) != (2, 2):
        raise UnsupportedTopology(f"kstk requires kt=2 and kr=2, got {cfg.k_t}x{cfg.k_r}")
    mu, r = cfg.mu_t, cfg.r_w
    if r == 0:
        raise ZeroFronthaul("kstk needs r_w > 0")
    half, low, one, two = Fraction(1, 2), Fraction(2, 3), 1, 2
    # (mu-range closed, r-range closed, value); at shared boundaries the
    # minimum over every branch whose closed condition holds is returned.
    lo_mu = mu <= half
    hi_mu = mu >= half
    cands = []
    if r <= low:
        if lo_mu:
            cands.append(mu * (3 - 4 / r) + 2 / r)
        if hi_mu:
            cands.append(2 - mu)
    if low <= r <= one:
        if lo_mu:
            cands.append((1 - mu) * 2 / r)
        if hi_mu:
            cands.append(2 * mu * (1 - 1 / r) + 2 / r - 1)
    if one <= r <= two:
        if lo_mu:
            cands.append(2 * (1 - 2 / r) * mu + 2 / r)
        if hi_mu:
            cands.append(Fraction(1))
    if r >= two:
        cands.append(Fraction(1))
    return min(cands)


def ndt_dyl(cfg: NetworkConfig) -> Fraction:
    """Centralized benchmark for general K_T x K_R with caches at both ends."""
    t_min, ue = cfg.k_t * cfg.mu_t, cfg.k_r * cfg.mu_r
    if t_min.denominator != 1 or ue.denominator != 1:
        raise NonIntegerCachePoint(
            f"dyl needs integer kt*mut and kr*mur, got {t_min} and {ue}")
    t_min, ue = int(t_min), int(ue)
    k_t, k_r = cfg.k_t, cfg.k_r
    if cfg.r_w == 0 and t_min < k_t:
        raise ZeroFronthaul("dyl needs r_w > 0 unless mu_t = 1")
    if t_min == 0:
        return Fraction(k_r) / cfg.r_w + Fraction(k_r - ue, min(k_t + ue, k_r))
    best = None
    for t in range(t_min, k_t + 1):
        fetch = Fraction(0) if t == t_min else Fraction((t - t_min) * k_r) / (t * cfg.r_w)
        v = fetch + Fraction(k_r - ue, min(t + ue, k_r))
        best = v if best is None or v < best else best
    return best
