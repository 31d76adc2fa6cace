from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ndtlab.core import (
    Duplex, FronthaulKind, NetworkConfig, NdtResult, binom, decentralized_fraction,
    symmetric_fraction, to_rational, ue_only_fraction, xmulticast_dof,
)
from ndtlab.errors import ConfigError, DomainError, NonIntegerCachePoint

rationals = st.fractions(min_value=0, max_value=1, max_denominator=12)


@pytest.mark.parametrize("n,k,expected", [(3, 2, 3), (5, 0, 1), (4, 7, 0), (4, -1, 0), (0, 0, 1)])
def test_binom(n, k, expected):
    assert binom(n, k) == expected


class TestConfig:
    def test_defaults(self):
        cfg = NetworkConfig(3, 3, "1/3", 0.25)
        assert cfg.mu_t == F(1, 3) and cfg.mu_r == F(1, 4)
        assert cfg.n_files == 3
        assert cfg.fronthaul is FronthaulKind.NONE and cfg.duplex is Duplex.HALF

    @pytest.mark.parametrize("kw", [
        dict(k_t=1, k_r=3, mu_t=0, mu_r=0),
        dict(k_t=3, k_r=3, mu_t=F(4, 3), mu_r=0),
        dict(k_t=3, k_r=3, mu_t=0, mu_r=-1),
        dict(k_t=3, k_r=3, mu_t=0, mu_r=0, n_files=2),
        dict(k_t=3.0, k_r=3, mu_t=0, mu_r=0),
    ])
    def test_rejects(self, kw):
        with pytest.raises(ConfigError):
            NetworkConfig(**kw)

    def test_negative_rate(self):
        with pytest.raises(ConfigError):
            NetworkConfig.wireless(2, 2, 0, 0, -1)

    def test_decimal_snapping(self):
        assert to_rational("0.1") == F(1, 10)
        assert to_rational(1 / 3) == F(1, 3)
        assert to_rational("2/6") == F(1, 3)
        with pytest.raises(ConfigError):
            to_rational("x/2")
        with pytest.raises(ConfigError):
            to_rational(float("nan"))

    def test_covers_library(self):
        assert NetworkConfig(3, 3, F(2, 9), F(1, 3)).covers_library
        assert not NetworkConfig(3, 3, F(1, 10), F(1, 3)).covers_library

    def test_result_combine(self):
        assert NdtResult.combine(F(1), F(2), Duplex.HALF).total == 3
        r = NdtResult.combine(F(1), F(2), Duplex.FULL)
        assert r.total == 2 and r.rule == "max"


class TestFractions:
    def test_empty_caches(self):
        assert decentralized_fraction(NetworkConfig(3, 3, 0, 0), 0, 0) == 1

    def test_hand_value(self):
        cfg = NetworkConfig(3, 3, F(1, 3), F(1, 3))
        assert decentralized_fraction(cfg, 1, 1) == F(16, 729)

    def test_full_caches(self):
        assert decentralized_fraction(NetworkConfig(2, 4, 1, 1), 4, 2) == 1

    def test_ue_only(self):
        assert ue_only_fraction(NetworkConfig(2, 2, 0, F(1, 2)), 1) == F(1, 4)
        assert ue_only_fraction(NetworkConfig(2, 2, 0, 0), 0) == 1
        assert ue_only_fraction(NetworkConfig(2, 2, 0, 1), 2) == 1

    def test_symmetric(self):
        assert symmetric_fraction(NetworkConfig(3, 3, 0, F(1, 3))) == F(1, 3)
        assert symmetric_fraction(NetworkConfig(2, 2, 0, 1)) == 1
        with pytest.raises(NonIntegerCachePoint):
            symmetric_fraction(NetworkConfig(2, 3, 0, F(1, 2)))

    def test_range_checks(self):
        cfg = NetworkConfig(2, 2, 0, 0)
        with pytest.raises(DomainError):
            decentralized_fraction(cfg, 3, 0)

    @given(st.integers(2, 6), st.integers(2, 6), rationals, rationals)
    def test_conservation(self, k_t, k_r, mu_t, mu_r):
        cfg = NetworkConfig(k_t, k_r, mu_t, mu_r)
        total = sum(binom(k_r, r) * binom(k_t, t) * decentralized_fraction(cfg, r, t)
                    for r in range(k_r + 1) for t in range(k_t + 1))
        assert total == 1

    @given(st.integers(2, 6), st.integers(2, 6), rationals, rationals, st.data())
    def test_symmetry_swap(self, k_t, k_r, mu_t, mu_r, data):
        r = data.draw(st.integers(0, k_r))
        t = data.draw(st.integers(0, k_t))
        a = decentralized_fraction(NetworkConfig(k_t, k_r, mu_t, mu_r), r, t)
        b = decentralized_fraction(NetworkConfig(k_r, k_t, mu_r, mu_t), t, r)
        assert a == b


class TestDof:
    def test_examples(self):
        cfg = NetworkConfig(3, 3, 0, 0)
        assert xmulticast_dof(cfg, 0, 3) == 1
        assert xmulticast_dof(cfg, 1, 1) == F(6, 7)
        assert xmulticast_dof(NetworkConfig(2, 2, 0, 0), 0, 2) == 1

    def test_t_zero(self):
        with pytest.raises(DomainError):
            xmulticast_dof(NetworkConfig(3, 3, 0, 0), 0, 0)

    def test_hand_values(self):
        # r + t = K_R - 1 branch: x/(x+1) with x = C(K_R-1,r) C(K_T,t) t
        cfg = NetworkConfig(3, 3, 0, 0)
        assert xmulticast_dof(cfg, 0, 2) == F(6, 7)
        # 3x3, r=0, t=1: max{d_1, 1/3}; d_1 at t'=1 is 3/(3+2) = 3/5
        assert xmulticast_dof(cfg, 0, 1) == F(3, 5)

    @pytest.mark.parametrize("k_t", range(2, 9))
    @pytest.mark.parametrize("k_r", range(2, 9))
    def test_bounded_and_monotone_in_t(self, k_t, k_r):
        cfg = NetworkConfig(k_t, k_r, 0, 0)
        for r in range(k_r):
            vals = [xmulticast_dof(cfg, r, t) for t in range(1, k_t + 1)]
            assert all(0 < v <= 1 for v in vals)
            assert all(a <= b for a, b in zip(vals, vals[1:]))
