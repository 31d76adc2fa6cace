"""Symbolic delivery plans and a set-level verifier.

A plan is a list of phases. Fronthaul phases carry messages from the MBS to
ENs; access phases carry messages from EN cooperation groups to UEs over a
cooperative X-multicast channel with a given per-user DoF. Every message is
an XOR of subfile pieces. Verification works purely on sets and exact
rationals: it replays the phases, tracks what every EN knows, checks that
each target can peel its XOR, that every UE ends up with exactly its file,
and that the time accounting matches the closed-form NDT.

Nodes are 1-based, as are file indices. UE q demands ``demand[q-1]``.
"""

from __future__ import annotations

import enum
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

import numpy as np

from ndtlab import accel
from ndtlab.core import NetworkConfig, binom, decentralized_fraction, xmulticast_dof
from ndtlab.errors import ConfigError, ScaleLimit
from ndtlab.wireless import group_option, tau_group

PLAN_SCALE_CAP = 4
SAMPLER_SCALE_CAP = 6
MIN_BITS = 10**4


def _subsets(items, size):
    return [tuple(c) for c in itertools.combinations(items, size)]


def _fmt_set(s) -> str:
    return "{" + ",".join(str(x) for x in s) + "}"


@dataclass(frozen=True, order=True)
class SubfileId:
    """W_{file, ue_set, en_set}; ``piece`` names the EN set a split piece belongs to."""

    file: int
    ue_set: tuple
    en_set: tuple
    piece: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "ue_set", tuple(sorted(set(self.ue_set))))
        object.__setattr__(self, "en_set", tuple(sorted(set(self.en_set))))
        if self.piece is not None:
            object.__setattr__(self, "piece", tuple(sorted(set(self.piece))))

    @property
    def base(self) -> "SubfileId":
        return SubfileId(self.file, self.ue_set, self.en_set) if self.piece is not None else self

    def __str__(self):
        tail = "" if self.piece is None else "@" + _fmt_set(self.piece)
        return f"W({self.file};{_fmt_set(self.ue_set)};{_fmt_set(self.en_set)}{tail})"


@dataclass(frozen=True)
class CodedMessage:
    parts: tuple
    targets: tuple
    holders: tuple
    size: Fraction

    def __str__(self):
        body = " ".join(str(p) for p in self.parts)
        return f"XOR[ {body} ] -> targets {_fmt_set(self.targets)} size {self.size}"


class PhaseKind(enum.Enum):
    FRONTHAUL_MULTICAST = "fronthaul-multicast"
    FRONTHAUL_CODED_MULTICAST = "fronthaul-coded-multicast"
    ACCESS_XMULTICAST = "access-xmulticast"

    @property
    def fronthaul(self) -> bool:
        return self is not PhaseKind.ACCESS_XMULTICAST


@dataclass
class Phase:
    kind: PhaseKind
    messages: list
    coop: int = 0          # EN cooperation-group size (access phases)
    multicast: int = 0     # UE multicast-group size (access phases)
    dof: Fraction | None = None
    group: tuple | None = None  # (m, n, i) for wireless plans


@dataclass
class DeliveryPlan:
    k_t: int
    k_r: int
    phases: list = field(default_factory=list)

    def to_text(self) -> str:
        lines = [f"plan kt={self.k_t} kr={self.k_r} phases={len(self.phases)}"]
        for k, ph in enumerate(self.phases, start=1):
            head = f"phase {k} {ph.kind.value}"
            if ph.group is not None:
                head += " group=({},{},{})".format(*ph.group)
            if not ph.kind.fronthaul:
                head += f" coop={ph.coop} multicast={ph.multicast} dof={ph.dof}"
            lines.append(head)
            lines.extend(str(msg) for msg in ph.messages)
        return "\n".join(lines) + "\n"


class Placement:
    """Exact subfile sizes of the demanded files; caches follow from the index sets."""

    def __init__(self, k_t: int, k_r: int, sizes: dict):
        self.k_t = k_t
        self.k_r = k_r
        self.sizes = {sid: Fraction(v) for sid, v in sizes.items() if v != 0}

    @classmethod
    def by_class(cls, k_t, k_r, files, fractions: dict):
        """Every subset pair gets the size of its (|ue_set|, |en_set|) class."""
        sizes = {}
        for f in files:
            for r in range(k_r + 1):
                for phi in _subsets(range(1, k_r + 1), r):
                    for t in range(k_t + 1):
                        size = fractions.get((r, t), 0)
                        if size == 0:
                            continue
                        for psi in _subsets(range(1, k_t + 1), t):
                            sizes[SubfileId(f, phi, psi)] = size
        return cls(k_t, k_r, sizes)

    def size(self, sid: SubfileId) -> Fraction:
        return self.sizes.get(sid.base, Fraction(0))

    def cache_map(self) -> dict:
        """('ue', q) / ('en', p) -> set of cached SubfileIds."""
        out = {("ue", q): set() for q in range(1, self.k_r + 1)}
        out.update({("en", p): set() for p in range(1, self.k_t + 1)})
        for sid in self.sizes:
            for q in sid.ue_set:
                out[("ue", q)].add(sid)
            for p in sid.en_set:
                out[("en", p)].add(sid)
        return out


def default_demand(k_r: int) -> tuple:
    return tuple(range(1, k_r + 1))


def _check_scale(cfg):
    if cfg.k_t > PLAN_SCALE_CAP or cfg.k_r > PLAN_SCALE_CAP:
        raise ScaleLimit(
            f"plan enumeration is capped at kt, kr <= {PLAN_SCALE_CAP}; got {cfg.k_t}x{cfg.k_r}")


def _check_demand(cfg, demand):
    demand = tuple(demand)
    if len(demand) != cfg.k_r:
        raise ConfigError(f"demand has {len(demand)} entries for {cfg.k_r} UEs")
    if len(set(demand)) != len(demand):
        raise ConfigError("only distinct demands are supported")
    if any(not 1 <= d <= cfg.n_files for d in demand):
        raise ConfigError(f"demand entries must lie in [1, {cfg.n_files}]")
    return demand


def wireless_placement(cfg: NetworkConfig, demand, fractions=None) -> Placement:
    if fractions is None:
        fractions = {(r, t): decentralized_fraction(cfg, r, t)
                     for r in range(cfg.k_r + 1) for t in range(cfg.k_t + 1)}
    return Placement.by_class(cfg.k_t, cfg.k_r, demand, fractions)


def build_plan_wireless(cfg: NetworkConfig, demand=None, fractions=None, boosts=None) -> DeliveryPlan:
    """Algorithm-1 plan. ``boosts`` maps (m, n) to i; by default the
    minimising i of each group is used."""
    _check_scale(cfg)
    demand = _check_demand(cfg, default_demand(cfg.k_r) if demand is None else demand)
    k_t, k_r = cfg.k_t, cfg.k_r
    if fractions is None:
        fractions = {(r, t): decentralized_fraction(cfg, r, t)
                     for r in range(k_r + 1) for t in range(k_t + 1)}
    if any(v < 0 for v in fractions.values()):
        raise ConfigError("subfile fractions must be nonnegative")
    boosts = dict(boosts or {})
    ues, ens = range(1, k_r + 1), tuple(range(1, k_t + 1))
    plan = DeliveryPlan(k_t, k_r)
    for m in range(k_r):
        for n in range(k_t + 1):
            f = Fraction(fractions.get((m, n), 0))
            if f == 0:
                continue
            i = boosts.get((m, n))
            if i is None:
                i = k_t if n == 0 else tau_group(cfg, m, n).best_i
            groups = _subsets(ues, m + 1)

            def coded(phi_plus, psi, piece):
                parts = tuple(SubfileId(demand[q - 1], tuple(x for x in phi_plus if x != q), psi, piece)
                              for q in phi_plus)
                return parts

            if n == 0:
                msgs = [CodedMessage(coded(g, (), None), ens, (), f) for g in groups]
                plan.phases.append(Phase(PhaseKind.FRONTHAUL_MULTICAST, msgs, group=(m, 0, k_t)))
                access = [CodedMessage(msg.parts, g, ens, f) for msg, g in zip(msgs, groups)]
                plan.phases.append(Phase(PhaseKind.ACCESS_XMULTICAST, access, k_t, m + 1,
                                         xmulticast_dof(cfg, m, k_t), (m, 0, k_t)))
                continue
            if not 0 <= i <= k_t - n:
                raise ConfigError(f"boost i={i} outside [0, {k_t - n}] for group ({m},{n})")
            sub = f / binom(k_t - n, i)
            fronthaul, access = [], []
            for psi_plus in _subsets(ens, n + i):
                label = psi_plus if i > 0 else None
                for g in groups:
                    for psi in _subsets(psi_plus, n):
                        access.append(CodedMessage(coded(g, psi, label), g, psi_plus, sub))
                    if i == 0:
                        continue
                    if i >= n + 1:
                        for psi in _subsets(psi_plus, n):
                            targets = tuple(p for p in psi_plus if p not in psi)
                            fronthaul.append(CodedMessage(coded(g, psi, label), targets, (), sub))
                    else:
                        for psi_prime in _subsets(psi_plus, n + 1):
                            parts = tuple(itertools.chain.from_iterable(
                                coded(g, psi, label) for psi in _subsets(psi_prime, n)))
                            fronthaul.append(CodedMessage(parts, psi_prime, (), sub))
            if fronthaul:
                kind = PhaseKind.FRONTHAUL_MULTICAST if i >= n + 1 else PhaseKind.FRONTHAUL_CODED_MULTICAST
                plan.phases.append(Phase(kind, fronthaul, group=(m, n, i)))
            plan.phases.append(Phase(PhaseKind.ACCESS_XMULTICAST, access, n + i, m + 1,
                                     xmulticast_dof(cfg, m, n + i), (m, n, i)))
    return plan


# ---------------------------------------------------------------- verifier

@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    fronthaul: Fraction = Fraction(0)
    access: Fraction = Fraction(0)

    @property
    def total(self):
        return self.fronthaul + self.access

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def fail(self, check: str, message: str):
        self.checks[check] = False
        self.violations.append(f"[{check}] {message}")

    def to_text(self) -> str:
        lines = [f"{name}: {'PASS' if ok else 'FAIL'}" for name, ok in sorted(self.checks.items())]
        lines += self.violations
        lines.append(f"fronthaul={self.fronthaul} access={self.access} total={self.total}")
        return "\n".join(lines) + "\n"


CHECKS = ("a_fronthaul_decodable", "b_access_decodable", "c_coverage", "d_accounting")


def _phi_plus(part: SubfileId, owner: dict) -> tuple:
    q = owner.get(part.file)
    return tuple(sorted(set(part.ue_set) | ({q} if q is not None else set())))


def _units(msg: CodedMessage, owner: dict) -> dict:
    # a unit is one coded (sub-)message: the parts sharing Phi+, EN set and piece
    units = defaultdict(list)
    for part in msg.parts:
        units[(_phi_plus(part, owner), part.en_set, part.piece)].append(part)
    return units


def verify_plan(plan: DeliveryPlan, cfg: NetworkConfig, demand=None, cache_map=None,
                placement: Placement | None = None, expected=None) -> VerificationReport:
    """Run checks (a)-(d). ``expected`` may give (fronthaul, access) totals
    that the plan's accounting must reproduce exactly."""
    report = VerificationReport(checks={c: True for c in CHECKS})
    try:
        _verify(plan, cfg, demand, cache_map, placement, expected, report)
    except Exception as exc:  # a malformed plan must still produce a report
        report.fail("d_accounting", f"verifier aborted: {type(exc).__name__}: {exc}")
    return report


def _verify(plan, cfg, demand, cache_map, placement, expected, report):
    demand = tuple(default_demand(cfg.k_r) if demand is None else demand)
    owner = {f: q for q, f in enumerate(demand, start=1)}
    if placement is None:
        placement = wireless_placement(cfg, demand)
    if cache_map is None:
        cache_map = placement.cache_map()

    # (a) replay fronthaul phases, tracking which units each EN knows
    known = {p: set() for p in range(1, cfg.k_t + 1)}

    def en_knows(p, key, parts):
        if key in known[p]:
            return True
        return all(part.base in cache_map.get(("en", p), ()) for part in parts)

    fronthaul_load = defaultdict(Fraction)
    access_time = defaultdict(Fraction)
    decoded = defaultdict(list)  # ue -> list of (SubfileId, size)
    for k, ph in enumerate(plan.phases, start=1):
        if ph.kind.fronthaul:
            for msg in ph.messages:
                fronthaul_load[ph.group] += msg.size
                units = _units(msg, owner)
                for p in msg.targets:
                    unknown = [key for key, parts in units.items() if not en_knows(p, key, parts)]
                    if len(unknown) != 1:
                        report.fail("a_fronthaul_decodable",
                                    f"phase {k}: EN {p} sees {len(unknown)} unknown units in {msg}")
                        continue
                    known[p].add(unknown[0])
            continue

        if ph.dof is None or ph.dof <= 0:
            report.fail("d_accounting", f"phase {k}: access phase without a positive dof")
            continue
        if ph.coop >= 1 and ph.multicast >= 1 and ph.dof != xmulticast_dof(cfg, ph.multicast - 1, ph.coop):
            report.fail("d_accounting", f"phase {k}: dof {ph.dof} does not match its channel shape")
        load = defaultdict(Fraction)
        for msg in ph.messages:
            # the transmitting ENs must all hold the message
            for key, parts in _units(msg, owner).items():
                for p in msg.holders:
                    if not en_knows(p, key, parts):
                        report.fail("a_fronthaul_decodable", f"phase {k}: EN {p} cannot form {msg}")
            sizes = {placement.size(part) for part in msg.parts}
            for q in msg.targets:
                load[q] += msg.size
                want = [part for part in msg.parts if part.file == demand[q - 1] and q not in part.ue_set]
                side = [part for part in msg.parts if part not in want]
                if len(want) != 1:
                    report.fail("b_access_decodable",
                                f"phase {k}: UE {q} finds {len(want)} wanted parts in {msg}")
                    continue
                missing = [part for part in side if part.base not in cache_map.get(("ue", q), ())]
                if missing:
                    report.fail("b_access_decodable",
                                f"phase {k}: UE {q} lacks side information {missing[0]} for {msg}")
                    continue
                decoded[q].append((want[0], msg.size))
            if 0 in sizes or not msg.parts:
                report.fail("c_coverage", f"phase {k}: message carries a part of zero size: {msg}")
        if load:
            access_time[ph.group] += max(load.values()) / ph.dof

    # (c) every UE reassembles exactly its demanded file
    for q in range(1, cfg.k_r + 1):
        f = demand[q - 1]
        got = defaultdict(Fraction)
        seen = set()
        for part, size in decoded[q]:
            if part in seen:
                report.fail("c_coverage", f"UE {q} receives {part} twice")
            seen.add(part)
            got[part.base] += size
        total = Fraction(0)
        for sid, size in placement.sizes.items():
            if sid.file != f:
                continue
            if q in sid.ue_set:
                if sid in got:
                    report.fail("c_coverage", f"UE {q} is sent {sid}, which it caches")
                total += size
                continue
            if got.get(sid, 0) != size:
                report.fail("c_coverage", f"UE {q} gets {got.get(sid, 0)} of {sid} (size {size})")
            total += min(got.get(sid, 0), size)
        for sid in got:
            if sid not in placement.sizes:
                report.fail("c_coverage", f"UE {q} is sent {sid}, which does not exist")
        if total != 1:
            report.fail("c_coverage", f"UE {q} recovers {total} of file {f}")

    # (d) accounting
    r_w = cfg.r_w
    fr_total = sum(fronthaul_load.values(), Fraction(0))
    if fr_total and r_w == 0:
        report.fail("d_accounting", "plan uses the fronthaul but r_w = 0")
        report.fronthaul = Fraction(0)
    else:
        report.fronthaul = fr_total / r_w if fr_total else Fraction(0)
    report.access = sum(access_time.values(), Fraction(0))
    groups = sorted({ph.group for ph in plan.phases if ph.group is not None})
    for key in groups:
        m, n, i = key
        if n == 0:
            f = placement.size(SubfileId(demand[0], tuple(range(2, m + 2)), ()))
            want_f = binom(cfg.k_r, m + 1) * f / r_w if r_w else None
            want_a = binom(cfg.k_r - 1, m) * f / xmulticast_dof(cfg, m, cfg.k_t)
        else:
            f = placement.size(SubfileId(demand[0], tuple(range(2, m + 2)), tuple(range(1, n + 1))))
            want_f, want_a = group_option(cfg, m, n, i, f)
        got_f = fronthaul_load[key] / r_w if fronthaul_load[key] else Fraction(0)
        if want_f is None or got_f != want_f:
            report.fail("d_accounting", f"group {key}: fronthaul {got_f} != formula {want_f}")
        if access_time[key] != want_a:
            report.fail("d_accounting", f"group {key}: access {access_time[key]} != formula {want_a}")
    if expected is not None:
        exp_f, exp_a = expected
        if report.fronthaul != exp_f or report.access != exp_a:
            report.fail("d_accounting",
                        f"totals ({report.fronthaul}, {report.access}) != expected ({exp_f}, {exp_a})")


# ------------------------------------------------------- 3x3 worked examples

class Example(enum.Enum):
    IC_ZF = "IcZf"
    ZF_ONLY = "ZfOnly"
    IC_IA = "IcIa"


def example_config(example) -> NetworkConfig:
    example = Example(example)
    mu_t = Fraction(1, 3) if example is Example.IC_IA else Fraction(2, 3)
    return NetworkConfig(3, 3, mu_t, Fraction(1, 3))


def example_placement(example) -> Placement:
    example = Example(example)
    files, sizes = (1, 2, 3), {}
    for f in files:
        if example is Example.ZF_ONLY:
            sizes[SubfileId(f, (1, 2, 3), ())] = Fraction(1, 3)
            sizes[SubfileId(f, (), (1, 2, 3))] = Fraction(2, 3)
            continue
        en_sets = _subsets((1, 2, 3), 2 if example is Example.IC_ZF else 1)
        for q in (1, 2, 3):
            for psi in en_sets:
                sizes[SubfileId(f, (q,), psi)] = Fraction(1, 9)
    return Placement(3, 3, sizes)


def build_plan_examples_3x3(example) -> tuple:
    """(plan, NDT) of one of the three 3x3 worked examples. The per-user
    DoF of each access phase is the one the example grants."""
    example = Example(example)
    placement = example_placement(example)
    plan = DeliveryPlan(3, 3)
    if example is Example.IC_ZF:
        # each wanted subfile is sent alone; ZF nulls it at the UE that does
        # not cache it and the caching UE cancels it, so the channel is the
        # r=1, t=2 X-multicast
        msgs = [CodedMessage((sid,), (sid.file,), sid.en_set, size)
                for sid, size in sorted(placement.sizes.items()) if sid.file not in sid.ue_set]
        plan.phases.append(Phase(PhaseKind.ACCESS_XMULTICAST, msgs, 2, 2, Fraction(1)))
    elif example is Example.ZF_ONLY:
        msgs = [CodedMessage((SubfileId(q, (), (1, 2, 3)),), (q,), (1, 2, 3), Fraction(2, 3))
                for q in (1, 2, 3)]
        plan.phases.append(Phase(PhaseKind.ACCESS_XMULTICAST, msgs, 3, 1, Fraction(1)))
    else:
        msgs = []
        for p in (1, 2, 3):
            for q1, q2 in _subsets((1, 2, 3), 2):
                parts = (SubfileId(q1, (q2,), (p,)), SubfileId(q2, (q1,), (p,)))
                msgs.append(CodedMessage(parts, (q1, q2), (p,), Fraction(1, 9)))
        plan.phases.append(Phase(PhaseKind.ACCESS_XMULTICAST, msgs, 1, 2, Fraction(6, 7)))
    report = verify_plan(plan, example_config(example), placement=placement)
    if not report.passed:
        raise AssertionError("example plan failed verification:\n" + report.to_text())
    return plan, report.total


# ------------------------------------------------------------ Monte Carlo

def sample_decentralized_placement(cfg: NetworkConfig, bits: int, seed: int) -> dict:
    """Empirical per-set fraction of one file cached at exactly r UEs and t ENs.

    Every node caches exactly floor(mu * bits) bits drawn without replacement.
    """
    if bits < MIN_BITS:
        raise ConfigError(f"bits must be at least {MIN_BITS}, got {bits}")
    if cfg.k_t > SAMPLER_SCALE_CAP or cfg.k_r > SAMPLER_SCALE_CAP:
        raise ScaleLimit(f"sampler is capped at kt, kr <= {SAMPLER_SCALE_CAP}")
    rng = np.random.default_rng(seed)

    def masks(count, mu):
        out = np.zeros((count, bits), dtype=np.uint8)
        keep = floor(mu * bits)
        for row in out:
            row[rng.choice(bits, size=keep, replace=False)] = 1
        return out

    ue = masks(cfg.k_r, cfg.mu_r)
    en = masks(cfg.k_t, cfg.mu_t)
    hist = accel.kernels.cell_histogram(ue, en)
    return {(r, t): int(hist[r, t]) / (bits * binom(cfg.k_r, r) * binom(cfg.k_t, t))
            for r in range(cfg.k_r + 1) for t in range(cfg.k_t + 1)}
