import math

import pytest

from segreform.exterior import Form, wedge_power
from segreform.symfun import SymSeq, complete_sym, elem_sym, newton_convert

from conftest import random_spd, real_one_one


class TestElemSym:
    def test_all_ones(self):
        assert elem_sym([1, 1, 1], 2) == 3  # C(3,2)

    def test_constant_values(self):
        lam, n = 0.7, 5
        for k in range(n + 1):
            assert elem_sym([lam] * n, k) == pytest.approx(math.comb(n, k) * lam**k)

    def test_hand_expansion(self):
        # (x+2)(x+3)(x+5) = x^3 + 10x^2 + 31x + 30
        assert elem_sym([2, 3, 5], 1) == 10
        assert elem_sym([2, 3, 5], 2) == 31
        assert elem_sym([2, 3, 5], 3) == 30

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            elem_sym([1, 2], 3)
        with pytest.raises(ValueError):
            elem_sym([1, 2], -1)


class TestCompleteSym:
    def test_two_ones(self):
        # lam1^2, lam1 lam2, lam2^2
        assert complete_sym([1, 1], 2) == 3

    def test_degree_one_equals_elem(self, rng):
        vals = rng.standard_normal(4)
        assert complete_sym(vals, 1) == pytest.approx(elem_sym(vals, 1))

    def test_single_value_power(self):
        assert complete_sym([1.5], 4) == pytest.approx(1.5**4)

    def test_enumeration_cap(self):
        with pytest.raises(ValueError, match="newton_convert"):
            complete_sym([1.0, 2.0], 7)


class TestNewtonConvert:
    def test_power_series_oracle(self):
        # 1/(1+t)^2 = sum (-1)^k (k+1) t^k, so gamma = (1,2,1) gives sigma_k = k+1
        sig = newton_convert(SymSeq([1.0, 2.0, 1.0]), 5)
        assert [s for s in sig] == pytest.approx([1, 2, 3, 4, 5, 6])

    def test_zero_gammas(self):
        sig = newton_convert(SymSeq([1.0]), 4)
        assert list(sig)[1:] == [0.0] * 4

    def test_matches_direct_enumeration(self, rng):
        for _ in range(10):
            vals = rng.standard_normal(4)
            gam = SymSeq([elem_sym(vals, j) for j in range(5)])
            sig = newton_convert(gam, 4)
            for k in range(1, 5):
                assert sig[k] == pytest.approx(complete_sym(vals, k), abs=1e-10)

    def test_newton_relation_residual(self, rng):
        for length in (2, 3, 5):
            vals = rng.standard_normal(length)
            gammas = [elem_sym(vals, j) if j <= length else 0.0 for j in range(6)]
            sig = newton_convert(SymSeq(gammas), 5)
            for m in range(1, 6):
                res = sum((-1) ** j * sig[j] * gammas[m - j] for j in range(m + 1))
                assert abs(res) <= 1e-10

    def test_unit_entry_enforced(self):
        with pytest.raises(ValueError, match="unit"):
            SymSeq([2.0, 1.0])

    def test_runs_over_form_algebra(self, rng):
        # the subalgebra generated by a single (1,1)-form matches truncated
        # scalar power series: gamma_j = g_j * omega^j/j!-free products
        m = 4
        omega = real_one_one(m, random_spd(m, rng))
        g = [1.0, 0.8, -0.3, 0.05]
        gam_scalar = SymSeq(g)
        gam_form = SymSeq([Form.constant(m)] + [g[j] * wedge_power(omega, j)
                                                for j in range(1, 4)])
        sig_scalar = newton_convert(gam_scalar, m)
        sig_form = newton_convert(gam_form, m)
        for k in range(1, m + 1):
            expect = sig_scalar[k] * wedge_power(omega, k)
            assert (sig_form[k] - expect).max_abs() <= 1e-10 * (1 + expect.max_abs())
