from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ndtlab import accel
from ndtlab.core import NetworkConfig, binom, decentralized_fraction, xmulticast_dof
from ndtlab.errors import NonIntegerCachePoint, UnsupportedTopology, ZeroFronthaul, ZeroFronthaulRequired
from ndtlab.wireless import (
    GAP_LIMIT, gap_check, gap_ratio, group_option, ndt_dyl, ndt_kstk, ndt_wireless_lower,
    ndt_wireless_upper, tau_group, upper_limit_infinite_rate, upper_split,
)


def wl(k_t, k_r, mu_t, mu_r, r_w):
    return NetworkConfig.wireless(k_t, k_r, mu_t, mu_r, r_w)


class TestGroups:
    def test_uncached_group(self):
        g = tau_group(wl(3, 3, 0, 0, 3), 0, 0)
        assert (g.fronthaul, g.access, g.best_i) == (1, 1, 3)

    def test_full_en_cache(self):
        cfg = wl(3, 3, 1, F(1, 3), 2)
        for m in range(3):
            for n in range(3):
                assert tau_group(cfg, m, n).total == 0

    def test_brute_force_min_over_i(self):
        cfg = wl(3, 3, F(1, 3), F(1, 3), 1)
        f = decentralized_fraction(cfg, 1, 1)
        assert f == F(16, 729)
        options = []
        for i in range(3):
            # direct from the printed per-i expression
            fr = binom(3, 2) * binom(3, 1) * min(F(1), F(i, 2)) * f / 1
            ac = binom(2, 1) * binom(3, 1) * f / xmulticast_dof(cfg, 1, 1 + i)
            options.append((fr + ac, i, fr, ac))
            assert group_option(cfg, 1, 1, i) == (fr, ac)
        best = min(options)
        g = tau_group(cfg, 1, 1)
        assert (g.total, g.best_i, g.fronthaul, g.access) == best
        assert g.best_i == 0 and g.access == F(112, 729)

    def test_ties_pick_smaller_i(self):
        # with an enormous rate fronthaul is free, and i = K_T - n ties with larger i whenever d saturates
        cfg = wl(3, 2, F(1, 2), F(1, 2), 10**9)
        for m in range(2):
            for n in range(1, 4):
                g = tau_group(cfg, m, n)
                totals = [sum(group_option(cfg, m, n, i)) for i in range(4 - n)]
                assert g.best_i == totals.index(min(totals))

    def test_zero_rate(self):
        with pytest.raises(ZeroFronthaulRequired):
            tau_group(wl(3, 3, F(1, 2), 0, 0), 0, 0)
        g = tau_group(wl(3, 3, F(1, 2), 0, 0), 0, 1)
        assert g.best_i == 0 and g.fronthaul == 0


class TestUpper:
    def test_values(self):
        assert ndt_wireless_upper(wl(3, 3, 0, 0, 3))[0] == 2
        assert ndt_wireless_upper(wl(3, 3, F(1, 2), 1, 3))[0] == 0

    def test_breakdown_sums(self):
        total, groups = ndt_wireless_upper(wl(3, 4, F(1, 3), F(1, 4), 2))
        f, a = upper_split(groups)
        assert f + a == total == sum(g.total for g in groups)
        assert all(0 <= g.best_i <= 3 - g.n or (g.n == 0 and g.best_i == 3) for g in groups)

    def test_rate_sweep_and_limit(self):
        vals = [ndt_wireless_upper(wl(3, 3, F(1, 3), F(1, 3), r))[0] for r in range(1, 7)]
        assert all(b <= a for a, b in zip(vals, vals[1:]))
        lim = upper_limit_infinite_rate(wl(3, 3, F(1, 3), F(1, 3), 1))
        assert vals[-1] >= lim
        big = ndt_wireless_upper(wl(3, 3, F(1, 3), F(1, 3), 10**6))[0]
        assert abs(big - lim) <= F(1, 1000)
        assert upper_limit_infinite_rate(wl(3, 3, 1, F(1, 3), 1)) == ndt_wireless_upper(wl(3, 3, 1, F(1, 3), 1))[0]

    def test_monotone_on_grid(self):
        mus = [k / 10 for k in range(11)]
        for k_t in range(2, 6):
            for k_r in range(2, 6):
                tabs = accel.tables(k_t, k_r)

                def up(mt, mr, r):
                    return accel.wireless_bounds_float(k_t, k_r, mt, mr, r, tabs)[0]

                for a in mus:
                    for r in (0.5, 2, 8):
                        along_t = [up(b, a, r) for b in mus]
                        along_r = [up(a, b, r) for b in mus]
                        for seq in (along_t, along_r):
                            assert all(y <= x + 1e-12 for x, y in zip(seq, seq[1:]))
                    along_w = [up(a, 0.3, r) for r in (0.5, 1, 2, 4, 8)]
                    assert all(y <= x + 1e-12 for x, y in zip(along_w, along_w[1:]))


class TestLower:
    def test_values(self):
        assert ndt_wireless_lower(wl(3, 3, 0, 0, 3)) == (2, 3, 3)
        assert ndt_wireless_lower(wl(3, 3, 0, 1, 3))[0] == 0
        assert ndt_wireless_lower(wl(2, 2, F(1, 2), F(1, 2), 1))[0] == F(5, 8)

    def test_zero_rate(self):
        with pytest.raises(ZeroFronthaul):
            ndt_wireless_lower(wl(2, 2, 0, 0, 0))


class TestGap:
    def test_tight_point(self):
        b = gap_check(wl(3, 3, 0, 0, 3))
        assert (b.upper, b.lower, b.gap, b.l1_star, b.l2_star) == (2, 2, 1, 3, 3)
        assert b.within_gap

    def test_conventions(self):
        assert gap_ratio(0, 0) == 1
        assert gap_ratio(1, 0) == float("inf")
        b = gap_check(wl(3, 3, F(1, 2), 1, 2))
        assert b.gap == 1

    @settings(max_examples=80, deadline=None)
    @given(st.integers(2, 5), st.integers(2, 5), st.fractions(0, 1, max_denominator=10),
           st.fractions(0, 1, max_denominator=10), st.sampled_from([F(1, 2), 1, 2, 4, 8]))
    def test_sandwich_property(self, k_t, k_r, mu_t, mu_r, r_w):
        b = gap_check(wl(k_t, k_r, mu_t, mu_r, r_w))
        assert b.lower <= b.upper
        if b.lower > 0:
            assert 1 <= b.gap <= GAP_LIMIT


class TestKstk:
    def test_branches(self):
        for mu in (0, F(1, 4), F(1, 2), 1):
            assert ndt_kstk(wl(2, 2, mu, 0, 3)) == 1
        assert ndt_kstk(wl(2, 2, 0, 0, 1)) == 2
        assert ndt_kstk(wl(2, 2, 1, 0, F(9, 10))) == 1

    def test_continuity_at_boundaries(self):
        for r in (F(2, 3), 1, 2):
            for mu in (0, F(1, 4), F(1, 2), F(3, 4), 1):
                at = ndt_kstk(wl(2, 2, mu, 0, r))
                eps = F(1, 10**8)
                near = [ndt_kstk(wl(2, 2, mu, 0, r + s)) for s in (-eps, eps)]
                assert all(abs(at - v) < F(1, 10**6) for v in near)

    def test_topology(self):
        with pytest.raises(UnsupportedTopology):
            ndt_kstk(wl(3, 2, 0, 0, 1))


class TestDyl:
    def test_optimal_point(self):
        for r in (F(1, 10), 1, 7):
            assert ndt_dyl(wl(2, 2, F(1, 2), F(1, 2), r)) == F(1, 2)

    def test_zero_en_cache_keeps_fronthaul_term(self):
        assert ndt_dyl(wl(3, 3, 0, 1, 2)) == F(3, 2)

    def test_full_en_cache(self):
        assert ndt_dyl(wl(3, 3, 1, F(1, 3), 2)) == F(2, 3)

    def test_non_integer(self):
        with pytest.raises(NonIntegerCachePoint):
            ndt_dyl(wl(3, 3, F(1, 2), 0, 1))
