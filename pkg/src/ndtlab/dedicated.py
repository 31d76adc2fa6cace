"""F-RAN with a dedicated fronthaul link per EN.

EN placement is centralized: below mu_T = 1/K_T each EN stores distinct
bits; above it, part of every file is replicated at all ENs and the rest is
spread across them. UE placement is either symmetric (centralized) or
random (decentralized).

The best of three delivery strategies is taken, with fronthaul and access
times added (half duplex) or overlapped (full duplex). Access-only uses the
EN caches alone, cloud-only soft-transfers over the fronthaul, and joint
serves the cached part locally and soft-transfers the remainder.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from ndtlab.core import Duplex, NetworkConfig, binom, symmetric_fraction, ue_only_fraction
from ndtlab.errors import (CacheOutOfRange, DomainError, InfeasibleCacheSizes,
                           RequiresEmptyEnCache, UnsupportedTopology, ZeroFronthaul)
from ndtlab.lp import LinearProgram, solve_lp


class Placement(enum.Enum):
    CENTRALIZED = "centralized"
    DECENTRALIZED = "decentralized"


class Strategy(enum.Enum):
    ACCESS_ONLY = "access-only"
    CLOUD_ONLY = "cloud-only"
    JOINT = "joint"


@dataclass(frozen=True)
class DedicatedNdt:
    fronthaul: Fraction
    access: Fraction
    total: Fraction
    strategy: Strategy
    placement: Placement
    duplex: Duplex = Duplex.HALF
    # (mu_r, weight, strategy) triples when centralized memory sharing was used
    mix: tuple = field(default=(), compare=False)

    @classmethod
    def build(cls, f, a, strategy, placement, duplex, mix=()):
        total = max(f, a) if duplex is Duplex.FULL else f + a
        return cls(f, a, total, strategy, placement, duplex, tuple(mix))


def tau_ia(cfg: NetworkConfig, j: int, f_prime) -> Fraction:
    """IA + IC delivery of subfiles held by one EN and j UEs."""
    k_t, k_r = cfg.k_t, cfg.k_r
    dof = max(Fraction(k_t * k_r, k_t + k_r - (j + 1)), Fraction(j + 1))
    return k_r * binom(k_r - 1, j) * f_prime / dof


def tau_zf(cfg: NetworkConfig, j: int, f_prime) -> Fraction:
    """ZF + IC delivery of subfiles held by every EN and j UEs."""
    return Fraction(cfg.k_r * binom(cfg.k_r - 1, j)) * f_prime / min(cfg.k_t + j, cfg.k_r)


def _terms(cfg: NetworkConfig, placement: Placement) -> list:
    """(j, f') pairs the delivery sums run over; j = K_R is cached locally and omitted."""
    if placement is Placement.CENTRALIZED:
        j = cfg.k_r * cfg.mu_r
        if j.denominator != 1:
            raise AssertionError("centralized terms need an integer cache point")
        j = int(j)
        return [] if j == cfg.k_r else [(j, symmetric_fraction(cfg))]
    return [(j, ue_only_fraction(cfg, j)) for j in range(cfg.k_r)]


def _access_only_parts(cfg, terms):
    k_t, mu_t = cfg.k_t, cfg.mu_t
    w_ia = k_t * (1 - mu_t) / (k_t - 1)
    w_zf = (k_t * mu_t - 1) / (k_t - 1)
    access = sum((w_ia * tau_ia(cfg, j, f) + w_zf * tau_zf(cfg, j, f) for j, f in terms), Fraction(0))
    return Fraction(0), access


def _cloud_parts(cfg, terms):
    # the soft-transfer expressions do not involve mu_T, so this also serves
    # as the cloud-only option when the ENs do have caches
    k_t, k_r, r_d = cfg.k_t, cfg.k_r, cfg.r_d
    fronthaul = sum((Fraction(k_r * binom(k_r - 1, j)) * f / (k_t * r_d) for j, f in terms), Fraction(0))
    access = sum((Fraction(k_r * binom(k_r - 1, j)) * f / min(k_r, k_t + j) for j, f in terms), Fraction(0))
    return fronthaul, access


def _joint_parts(cfg, terms):
    share = cfg.k_t * cfg.mu_t
    c_f, c_a = _cloud_parts(cfg, terms)
    ia = sum((tau_ia(cfg, j, f) for j, f in terms), Fraction(0))
    return (1 - share) * c_f, share * ia + (1 - share) * c_a


_PARTS = {
    Strategy.ACCESS_ONLY: _access_only_parts,
    Strategy.CLOUD_ONLY: _cloud_parts,
    Strategy.JOINT: _joint_parts,
}


def _evaluate(cfg, placement, strategies, duplex) -> DedicatedNdt:
    """Best of ``strategies``; centralized placement memory-shares over integer mu_R."""
    if placement is Placement.DECENTRALIZED or (cfg.k_r * cfg.mu_r).denominator == 1:
        best = None
        for s in strategies:
            f, a = _PARTS[s](cfg, _terms(cfg, placement))
            cand = DedicatedNdt.build(f, a, s, placement, duplex)
            if best is None or cand.total < best.total:
                best = cand
        return best
    return _memory_share(cfg, strategies, duplex)


def _memory_share(cfg, strategies, duplex) -> DedicatedNdt:
    # One column per (integer point, strategy). Half duplex minimises the
    # weighted sum of totals; full duplex minimises max(sum w*F, sum w*A).
    cols = []
    for i in range(cfg.k_r + 1):
        point = cfg.with_(mu_r=Fraction(i, cfg.k_r))
        terms = _terms(point, Placement.CENTRALIZED)
        for s in strategies:
            f, a = _PARTS[s](point, terms)
            cols.append((point.mu_r, s, f, a))
    k = len(cols)
    ones = [1] * k
    mus = [c[0] for c in cols]
    if duplex is Duplex.HALF:
        lp = LinearProgram([c[2] + c[3] for c in cols], [(ones, 1), (mus, cfg.mu_r)])
        sol = solve_lp(lp)
        weights = sol.x
    else:
        # variables: weights then t
        obj = [0] * k + [1]
        eqs = [(ones + [0], 1), (mus + [0], cfg.mu_r)]
        ineqs = [([c[2] for c in cols] + [-1], 0), ([c[3] for c in cols] + [-1], 0)]
        lp = LinearProgram(obj, eqs, ineqs, [(0, None)] * k + [(None, None)])
        sol = solve_lp(lp)
        weights = sol.x[:k]
    if not sol.optimal:
        raise InfeasibleCacheSizes(f"memory sharing failed at mu_r={cfg.mu_r}")
    f = sum((w * c[2] for w, c in zip(weights, cols)), Fraction(0))
    a = sum((w * c[3] for w, c in zip(weights, cols)), Fraction(0))
    mix = [(c[0], w, c[1]) for w, c in zip(weights, cols) if w != 0]
    lead = max(mix, key=lambda m: m[1])[2]
    return DedicatedNdt.build(f, a, lead, Placement.CENTRALIZED, duplex, mix)


def _need_fronthaul(cfg):
    if cfg.r_d == 0:
        raise ZeroFronthaul("this strategy needs r_d > 0")


def ndt_access_only(cfg: NetworkConfig, placement=Placement.CENTRALIZED) -> DedicatedNdt:
    placement = Placement(placement)
    if cfg.mu_t < Fraction(1, cfg.k_t):
        raise InfeasibleCacheSizes(f"access-only delivery needs mu_t >= 1/k_t, got {cfg.mu_t}")
    return _evaluate(cfg, placement, [Strategy.ACCESS_ONLY], cfg.duplex)


def ndt_cloud_only(cfg: NetworkConfig, placement=Placement.CENTRALIZED) -> DedicatedNdt:
    placement = Placement(placement)
    _need_fronthaul(cfg)
    if cfg.mu_t != 0:
        raise RequiresEmptyEnCache(f"cloud-only delivery is stated for mu_t = 0, got {cfg.mu_t}")
    return _evaluate(cfg, placement, [Strategy.CLOUD_ONLY], cfg.duplex)


def ndt_joint(cfg: NetworkConfig, placement=Placement.CENTRALIZED) -> DedicatedNdt:
    placement = Placement(placement)
    _need_fronthaul(cfg)
    if not 0 < cfg.mu_t < Fraction(1, cfg.k_t):
        raise CacheOutOfRange(f"joint delivery needs 0 < mu_t < 1/k_t, got {cfg.mu_t}")
    return _evaluate(cfg, placement, [Strategy.JOINT], cfg.duplex)


def applicable_strategies(cfg: NetworkConfig, duplex: Duplex) -> list:
    """Strategies the minimum runs over at this (mu_T, r_D) and duplex mode."""
    edge = Fraction(1, cfg.k_t)
    out = []
    if cfg.r_d > 0:
        out.append(Strategy.CLOUD_ONLY)
        # full duplex states the joint branch on the closed interval
        if cfg.mu_t < edge or (duplex is Duplex.FULL and cfg.mu_t == edge):
            out.append(Strategy.JOINT)
    if cfg.mu_t >= edge:
        out.append(Strategy.ACCESS_ONLY)
    return out


def ndt_dedicated(cfg: NetworkConfig, placement=Placement.CENTRALIZED, duplex=None) -> DedicatedNdt:
    """Best applicable strategy under half or full duplex.

    ``duplex`` defaults to ``cfg.duplex``. With r_D = 0 only access-only
    delivery is possible.
    """
    placement = Placement(placement)
    duplex = cfg.duplex if duplex is None else Duplex(duplex)
    strategies = applicable_strategies(cfg, duplex)
    if not strategies:
        raise ZeroFronthaul(f"mu_t = {cfg.mu_t} < 1/k_t needs a fronthaul, but r_d = 0")
    return _evaluate(cfg, placement, strategies, duplex)


def sts_threshold(k_t: int, k_r: int) -> Fraction:
    return Fraction(k_r * (k_t - 1), k_t * (min(k_t, k_r) - 1))


def ndt_sts(cfg: NetworkConfig, with_local_gain: bool = False) -> Fraction:
    """EN-cache-only benchmark; ``with_local_gain`` scales it by (1 - mu_R)."""
    k_t, k_r, mu_t, r_d = cfg.k_t, cfg.k_r, cfg.mu_t, cfg.r_d
    kmin = min(k_t, k_r)
    r_th = sts_threshold(k_t, k_r)
    edge = Fraction(1, k_t)
    cands = []
    if r_d <= r_th and mu_t <= edge and r_d > 0:
        cands.append((k_t + k_r - 1) * mu_t + (1 - mu_t * k_t) * (Fraction(k_r, kmin) + Fraction(k_r) / (k_t * r_d)))
    if r_d <= r_th and mu_t >= edge:
        cands.append(Fraction(k_r, kmin) * (k_t * mu_t - 1) / (k_t - 1) + (1 - mu_t) * Fraction(k_t + k_r - 1, k_t - 1))
    if r_d >= r_th:
        cands.append(Fraction(k_r, kmin) + (1 - mu_t) * k_r / (k_t * r_d))
    if not cands:
        raise ZeroFronthaul(f"STS needs r_d > 0 when mu_t < 1/k_t (mu_t={mu_t})")
    value = min(cands)
    return value * (1 - cfg.mu_r) if with_local_gain else value


def ndt_gene(cfg: NetworkConfig) -> Fraction:
    """Two-EN decentralized benchmark (random caching at ENs and UEs)."""
    if cfg.k_t != 2:
        raise UnsupportedTopology(f"gene requires kt=2, got kt={cfg.k_t}")
    mu_t, mu_r, k_r, r_d = cfg.mu_t, cfg.mu_r, cfg.k_r, cfg.r_d
    if mu_r == 0:
        raise DomainError("gene is undefined at mu_r = 0")
    if r_d == 0:
        raise ZeroFronthaul("gene needs r_d > 0")
    miss = (1 - mu_r) ** k_r
    single = (1 - mu_r) ** (k_r - 1)
    pre_f = (1 - mu_t) ** 2 * (1 - mu_r) / (r_d * mu_r)
    pre_a = (1 - mu_r) / mu_r
    if r_d <= k_r:
        tf = pre_f * (1 - miss - k_r * mu_r / 2 * single)
        ta = pre_a * (1 - miss - (Fraction(k_r, 2) - mu_t * (1 - mu_t)) * mu_r * single)
    else:
        # (1 - 3 mu_T)/(1 - mu_T) is multiplied in front of (1 - mu_T)^2 to stay finite at mu_T = 1
        tf = (1 - mu_t) * (1 - mu_r) / (r_d * mu_r) * (
            (1 - mu_t) * (1 - miss) - k_r * mu_r / 2 * single * (1 - 3 * mu_t))
        ta = pre_a * (1 - miss - k_r * mu_r / 2 * single)
    return tf + ta
