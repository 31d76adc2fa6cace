from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from ndtlab.core import NetworkConfig, binom
from ndtlab.errors import InfeasibleCacheSizes
from ndtlab.ic_schemes import (
    _XTL_3X3_REGIONS, _lower_bracket, ndt_hnd, ndt_lower_bound, ndt_nma, ndt_xtl,
    ndt_xtl_closed_form_3x3, split_index_set, xtl_3x3_region_value, xtl_3x3_regions, xtl_program,
)

GRID = [F(k, 20) for k in range(21)]


def cfg3(mu_t, mu_r):
    return NetworkConfig(3, 3, mu_t, mu_r)


class TestNma:
    def test_integer_points(self):
        assert ndt_nma(cfg3(F(2, 3), F(1, 3))) == F(2, 3)
        assert ndt_nma(cfg3(F(1, 3), 0)) == 3

    def test_full_ue_cache(self):
        assert ndt_nma(cfg3(0, 1)) == 0
        assert ndt_nma(cfg3(F(1, 2), 1)) == 0

    def test_infeasible(self):
        with pytest.raises(InfeasibleCacheSizes):
            ndt_nma(cfg3(F(1, 10), F(1, 3)))

    def test_memory_sharing_between_neighbours(self):
        v = ndt_nma(cfg3(F(1, 2), F(1, 3)))
        assert v <= (ndt_nma(cfg3(F(1, 3), F(1, 3))) + ndt_nma(cfg3(F(2, 3), F(1, 3)))) / 2


class TestHnd:
    def test_values(self):
        assert ndt_hnd(cfg3(F(1, 3), F(1, 3))) == F(7, 9)
        assert ndt_hnd(cfg3(1, F(1, 3))) == F(7, 9)
        assert ndt_hnd(cfg3(F(1, 3), 1)) == 0

    def test_needs_en_share(self):
        with pytest.raises(InfeasibleCacheSizes):
            ndt_hnd(cfg3(F(1, 4), F(1, 3)))

    def test_sharing_in_mu_r(self):
        v = ndt_hnd(cfg3(F(1, 3), F(1, 6)))
        a, b = ndt_hnd(cfg3(F(1, 3), 0)), ndt_hnd(cfg3(F(1, 3), F(1, 3)))
        assert v == (a + b) / 2


class TestXtl:
    def test_examples(self):
        assert ndt_xtl(cfg3(F(2, 3), F(1, 3)))[0] == F(2, 3)
        assert ndt_xtl(cfg3(F(1, 3), F(1, 3)))[0] == F(7, 9)
        assert ndt_xtl(cfg3(0, 1))[0] == 0

    def test_split_table_constraints(self):
        cfg = cfg3(F(1, 4), F(1, 2))
        value, table = ndt_xtl(cfg)
        assert table.total() == 1
        assert table.ue_load() <= cfg.mu_r and table.en_load() <= cfg.mu_t
        assert all(0 <= v <= 1 for v in table.a.values())
        assert set(table.a) == set(split_index_set(3, 3))

    def test_index_set(self):
        idx = split_index_set(3, 3)
        assert (3, 0) in idx and (0, 1) in idx and (2, 0) not in idx
        assert all(r + 3 * t >= 3 for r, t in idx)

    def test_infeasible(self):
        with pytest.raises(InfeasibleCacheSizes):
            ndt_xtl(cfg3(0, F(1, 2)))

    @pytest.mark.parametrize("k_t,k_r", [(2, 2), (2, 3), (3, 2), (4, 3), (3, 5)])
    def test_against_scipy(self, k_t, k_r):
        for mu_t in (F(1, 4), F(1, 2), F(3, 4)):
            for mu_r in (0, F(1, 3), F(2, 3)):
                cfg = NetworkConfig(k_t, k_r, mu_t, mu_r)
                if not cfg.covers_library:
                    continue
                lp, _ = xtl_program(cfg)
                ref = linprog([float(c) for c in lp.objective],
                              A_eq=[[float(v) for v in lp.eq_constraints[0][0]]], b_eq=[1.0],
                              A_ub=[[float(v) for v in row] for row, _ in lp.ineq_constraints],
                              b_ub=[float(b) for _, b in lp.ineq_constraints],
                              bounds=[(0, 1)] * lp.n, method="highs")
                assert float(ndt_xtl(cfg)[0]) == pytest.approx(ref.fun, abs=1e-9)

    def test_dominance_over_symmetric_schemes(self):
        for mu_t in GRID:
            for mu_r in GRID[::2]:
                cfg = cfg3(mu_t, mu_r)
                if not cfg.covers_library:
                    continue
                x = ndt_xtl(cfg)[0]
                assert x <= ndt_nma(cfg)
                if mu_t >= F(1, 3):
                    assert x <= ndt_hnd(cfg)


class TestClosedForm:
    def test_examples(self):
        assert ndt_xtl_closed_form_3x3(F(1, 3), F(2, 3)) == F(2, 3)
        assert ndt_xtl_closed_form_3x3(F(1, 3), F(1, 3)) == F(7, 9)
        assert ndt_xtl_closed_form_3x3(1, 1) == 0

    def test_infeasible(self):
        with pytest.raises(InfeasibleCacheSizes):
            ndt_xtl_closed_form_3x3(0, F(1, 4))

    def test_boundary_continuity(self):
        # wherever several region closures meet, their affine pieces agree
        pts = [F(k, 60) for k in range(61)]
        for mu_r in pts:
            for mu_t in pts:
                if mu_r + 3 * mu_t < 1:
                    continue
                regions = xtl_3x3_regions(mu_r, mu_t, closed=True)
                vals = {xtl_3x3_region_value(k, mu_r, mu_t) for k in regions}
                assert len(vals) <= 1, (mu_r, mu_t, regions)

    def test_every_point_covered(self):
        for mu_r in GRID:
            for mu_t in GRID:
                if mu_r + 3 * mu_t >= 1:
                    assert xtl_3x3_regions(mu_r, mu_t, closed=True)

    def test_region_count(self):
        assert len(_XTL_3X3_REGIONS) == 5


class TestLowerBound:
    def test_examples(self):
        v, w = ndt_lower_bound(cfg3(F(2, 3), F(1, 3)))
        assert v == F(2, 3)
        assert 1 <= w.l <= 3 and 0 <= w.s1 <= w.l and 0 <= w.s2 <= 3 - w.l
        assert ndt_lower_bound(cfg3(F(1, 2), 1))[0] == 0
        assert ndt_lower_bound(cfg3(F(2, 9), F(1, 3)))[0] == ndt_xtl(cfg3(F(2, 9), F(1, 3)))[0]

    def test_witness_value(self):
        cfg = cfg3(F(1, 4), F(1, 5))
        v, w = ndt_lower_bound(cfg)
        assert w.value == v == _lower_bracket(cfg, w.l, w.s1, w.s2)
        for l in range(1, 4):
            for s1 in range(l + 1):
                for s2 in range(3 - l + 1):
                    assert _lower_bracket(cfg, l, s1, s2) <= v

    @settings(max_examples=40, deadline=None)
    @given(st.fractions(0, 1, max_denominator=12), st.fractions(0, 1, max_denominator=12))
    def test_soundness(self, mu_t, mu_r):
        cfg = cfg3(mu_t, mu_r)
        if not cfg.covers_library:
            return
        lb = ndt_lower_bound(cfg)[0]
        assert lb >= 0
        assert lb <= ndt_xtl(cfg)[0]
        assert lb <= ndt_nma(cfg)
        if mu_t >= F(1, 3):
            assert lb <= ndt_hnd(cfg)


def test_monotone_on_grid():
    for scheme in (lambda c: ndt_xtl(c)[0], ndt_nma):
        for mu_r in GRID[::4]:
            vals = [scheme(cfg3(t, mu_r)) for t in GRID if mu_r + 3 * t >= 1]
            assert all(b <= a for a, b in zip(vals, vals[1:]))
        for mu_t in GRID[::4]:
            vals = [scheme(cfg3(mu_t, r)) for r in GRID if r + 3 * mu_t >= 1]
            assert all(b <= a for a, b in zip(vals, vals[1:]))
    for mu_t in (F(1, 3), F(1, 2), 1):
        vals = [ndt_hnd(cfg3(mu_t, r)) for r in GRID]
        assert all(b <= a for a, b in zip(vals, vals[1:]))
