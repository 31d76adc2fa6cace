"""Problem-instance types, exact combinatorics, subfile fractions and the
cooperative X-multicast per-user DoF.

All numeric configuration fields are stored as :class:`fractions.Fraction`,
so every formula downstream is evaluated in exact rational arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Union

from ndtlab.errors import ConfigError, DomainError, NonIntegerCachePoint

Number = Union[int, float, Fraction]

#: Largest denominator kept when a decimal is converted to a rational.
MAX_DENOMINATOR = 10**6


class FronthaulKind(enum.Enum):
    NONE = "none"
    DEDICATED = "dedicated"
    WIRELESS = "wireless"


class Duplex(enum.Enum):
    HALF = "half"
    FULL = "full"


def to_rational(value, name: str = "value") -> Fraction:
    """Convert ``value`` to a Fraction.

    Accepts ints, Fractions, floats and strings such as ``"1/3"`` or
    ``"0.25"``. Decimals are snapped to the closest rational with
    denominator at most :data:`MAX_DENOMINATOR`.
    """
    if isinstance(value, bool):
        raise ConfigError(f"{name}: expected a number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ConfigError(f"{name}: expected a finite number, got {value!r}")
        return Fraction(value).limit_denominator(MAX_DENOMINATOR)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(text).limit_denominator(MAX_DENOMINATOR)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{name}: cannot parse {value!r} as a rational") from exc
    raise ConfigError(f"{name}: expected a number, got {type(value).__name__}")


@dataclass(frozen=True)
class NetworkConfig:
    """One problem instance: K_T ENs, K_R UEs, N files, cache sizes, fronthaul.

    ``rate`` is the fronthaul multiplexing gain (r_D for dedicated links,
    r_W for the shared wireless link) and is ignored when ``fronthaul`` is
    :attr:`FronthaulKind.NONE`.
    """

    k_t: int
    k_r: int
    mu_t: Fraction
    mu_r: Fraction
    n_files: int | None = None
    fronthaul: FronthaulKind = FronthaulKind.NONE
    rate: Fraction = Fraction(0)
    duplex: Duplex = Duplex.HALF

    def __post_init__(self):
        for name in ("k_t", "k_r"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ConfigError(f"{name} must be an integer, got {v!r}")
            if v < 2:
                raise ConfigError(f"{name} must be >= 2, got {v}")
        n_files = self.k_r if self.n_files is None else self.n_files
        if isinstance(n_files, bool) or not isinstance(n_files, int):
            raise ConfigError(f"n_files must be an integer, got {n_files!r}")
        if n_files < self.k_r:
            raise ConfigError(f"n_files must be >= k_r ({self.k_r}), got {n_files}")
        object.__setattr__(self, "n_files", n_files)
        for name in ("mu_t", "mu_r"):
            v = to_rational(getattr(self, name), name)
            if not 0 <= v <= 1:
                raise ConfigError(f"{name} must lie in [0, 1], got {v}")
            object.__setattr__(self, name, v)
        fronthaul = FronthaulKind(self.fronthaul)
        object.__setattr__(self, "fronthaul", fronthaul)
        object.__setattr__(self, "duplex", Duplex(self.duplex))
        rate = to_rational(self.rate, "rate")
        if rate < 0:
            raise ConfigError(f"fronthaul rate must be >= 0, got {rate}")
        object.__setattr__(self, "rate", rate)

    @classmethod
    def no_fronthaul(cls, k_t, k_r, mu_t, mu_r, **kw) -> "NetworkConfig":
        return cls(k_t, k_r, mu_t, mu_r, fronthaul=FronthaulKind.NONE, **kw)

    @classmethod
    def dedicated(cls, k_t, k_r, mu_t, mu_r, r_d, **kw) -> "NetworkConfig":
        return cls(k_t, k_r, mu_t, mu_r, fronthaul=FronthaulKind.DEDICATED, rate=r_d, **kw)

    @classmethod
    def wireless(cls, k_t, k_r, mu_t, mu_r, r_w, **kw) -> "NetworkConfig":
        return cls(k_t, k_r, mu_t, mu_r, fronthaul=FronthaulKind.WIRELESS, rate=r_w, **kw)

    def with_(self, **changes) -> "NetworkConfig":
        return replace(self, **changes)

    @property
    def r_d(self) -> Fraction:
        return self.rate

    @property
    def r_w(self) -> Fraction:
        return self.rate

    @property
    def covers_library(self) -> bool:
        """True when one UE cache plus all EN caches can hold the library."""
        return self.mu_r + self.k_t * self.mu_t >= 1


@dataclass(frozen=True)
class NdtResult:
    """Fronthaul, access and total NDT together with the combining rule."""

    fronthaul: Number
    access: Number
    total: Number
    rule: str = "sum"
    detail: dict = field(default_factory=dict, compare=False)

    @classmethod
    def combine(cls, fronthaul, access, duplex: Duplex, **detail) -> "NdtResult":
        if duplex is Duplex.FULL:
            return cls(fronthaul, access, max(fronthaul, access), "max", detail)
        return cls(fronthaul, access, fronthaul + access, "sum", detail)


def binom(n: int, k: int) -> int:
    """C(n, k), with 0 outside ``0 <= k <= n``."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def decentralized_fraction(cfg: NetworkConfig, r: int, t: int) -> Fraction:
    """Size of the part of a file cached at one given set of r UEs and t ENs
    under random independent placement at every node."""
    _check_range("r", r, 0, cfg.k_r)
    _check_range("t", t, 0, cfg.k_t)
    return (cfg.mu_r ** r * (1 - cfg.mu_r) ** (cfg.k_r - r)
            * cfg.mu_t ** t * (1 - cfg.mu_t) ** (cfg.k_t - t))


def ue_only_fraction(cfg: NetworkConfig, r: int) -> Fraction:
    """Same as :func:`decentralized_fraction` with random placement at the UEs only."""
    _check_range("r", r, 0, cfg.k_r)
    return cfg.mu_r ** r * (1 - cfg.mu_r) ** (cfg.k_r - r)


def ue_cache_point(cfg: NetworkConfig) -> int:
    """K_R * mu_R as an integer; raises if it is not one."""
    j = cfg.k_r * cfg.mu_r
    if j.denominator != 1:
        raise NonIntegerCachePoint(
            f"k_r*mu_r = {j} is not an integer; use memory sharing instead")
    return int(j)


def symmetric_fraction(cfg: NetworkConfig) -> Fraction:
    """1 / C(K_R, K_R mu_R): subfile size under symmetric UE placement."""
    return Fraction(1, binom(cfg.k_r, ue_cache_point(cfg)))


def xmulticast_dof(cfg: NetworkConfig, r: int, t: int) -> Fraction:
    """Per-user DoF of the C(K_T,t) x C(K_R,r+1) cooperative X-multicast channel."""
    if t == 0:
        raise DomainError("the X-multicast DoF is only defined for t >= 1")
    _check_range("r", r, 0, cfg.k_r - 1)
    _check_range("t", t, 1, cfg.k_t)
    return _dof(cfg.k_t, cfg.k_r, r, t)


@lru_cache(maxsize=None)
def _dof(k_t: int, k_r: int, r: int, t: int) -> Fraction:
    if r + t >= k_r:
        return Fraction(1)
    base = binom(k_r - 1, r)
    if r + t == k_r - 1:
        x = base * binom(k_t, t) * t
        return Fraction(x, x + 1)
    best = Fraction(r + t, k_r)
    for tp in range(1, t + 1):
        num = base * binom(k_t, tp) * binom(k_r - r - 1, tp - 1) * tp
        den = num + binom(k_r - 1, r + 1) * binom(k_r - r - 2, tp - 1) * binom(k_t, tp - 1)
        best = max(best, Fraction(num, den))
    return best


def _check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise DomainError(f"{name}={value} outside [{lo}, {hi}]")
