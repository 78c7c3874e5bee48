import math
from fractions import Fraction

import numpy as np
import pytest

from segreform.curvature import chern_forms, random_curvature, segre_forms
from segreform.moments import (MomentSpec, moment_diagonal, moment_mc,
                               moment_wick, permanent_int, phi_k_scalar,
                               phi_k_scalar_moments, phi_k_tensor,
                               phi_k_tensor_naive, sample_directions)
from segreform.symfun import elem_sym

from conftest import random_hermitian


class TestMomentDiagonal:
    def test_closed_form_fixtures(self):
        assert moment_diagonal(2, (1, 0)) == Fraction(1, 2)
        assert moment_diagonal(2, (2, 0)) == Fraction(1, 3)
        assert moment_diagonal(2, (1, 1)) == Fraction(1, 6)

    def test_formula_shape(self):
        # m1!...mr!(r-1)!/(r-1+k)!
        assert moment_diagonal(3, (2, 1, 0)) == Fraction(
            math.factorial(2) * math.factorial(1) * math.factorial(2),
            math.factorial(5))

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            moment_diagonal(2, (1,))
        with pytest.raises(ValueError):
            moment_diagonal(2, (1, -1))


class TestPermanent:
    def test_small_cases(self):
        assert permanent_int([]) == 1
        assert permanent_int([[3]]) == 3
        assert permanent_int([[1, 1], [1, 1]]) == 2
        assert permanent_int([[0, 1], [1, 0]]) == 1

    def test_against_definition(self, rng):
        import itertools

        M = rng.integers(0, 3, size=(4, 4)).tolist()
        brute = sum(math.prod(M[i][p[i]] for i in range(4))
                    for p in itertools.permutations(range(4)))
        assert permanent_int(M) == brute


class TestMomentWick:
    def test_off_diagonal_equals_diagonal_value(self):
        # |v1|^2 |v2|^2 written with crossed indices
        assert moment_wick(MomentSpec(2, (1, 2), (2, 1))) == Fraction(1, 6)

    def test_unbalanced_vanishes(self):
        assert moment_wick(MomentSpec(2, (1,), (2,))) == 0
        assert moment_wick(MomentSpec(3, (1, 1), (1, 2))) == 0

    def test_degree_zero(self):
        assert moment_wick(MomentSpec(3, (), ())) == 1

    def test_reduces_to_diagonal(self, rng):
        for _ in range(20):
            r = int(rng.integers(1, 5))
            k = int(rng.integers(0, 4))
            idx = tuple(int(i) for i in rng.integers(1, r + 1, size=k))
            mult = [idx.count(l) for l in range(1, r + 1)]
            assert moment_wick(MomentSpec(r, idx, idx)) == moment_diagonal(r, mult)

    def test_equal_multisets_any_order(self, rng):
        for _ in range(10):
            r, k = 3, 3
            idx = tuple(int(i) for i in rng.integers(1, r + 1, size=k))
            perm = tuple(np.array(idx)[rng.permutation(k)])
            mult = [idx.count(l) for l in range(1, r + 1)]
            assert moment_wick(MomentSpec(r, idx, perm)) == moment_diagonal(r, mult)


class TestMomentMC:
    def test_degree_zero_exact(self):
        est, err = moment_mc(MomentSpec(3, (), ()), 10, seed=0)
        assert est == 1 and err == 0

    def test_matches_closed_form(self):
        spec = MomentSpec(2, (1,), (1,))
        est, err = moment_mc(spec, 200_000, seed=3)
        assert abs(est - 0.5) <= 3 * err

    def test_wick_cross_check_off_diagonal(self):
        spec = MomentSpec(2, (1, 2), (2, 1))
        est, err = moment_mc(spec, 200_000, seed=4)
        assert abs(est - 1 / 6) <= 3 * err

    def test_unbalanced_estimates_zero(self):
        est, err = moment_mc(MomentSpec(2, (1,), (2,)), 200_000, seed=5)
        assert abs(est) <= 4 * err

    def test_deterministic(self):
        spec = MomentSpec(3, (1, 2), (1, 2))
        assert moment_mc(spec, 70_000, seed=9) == moment_mc(spec, 70_000, seed=9)

    def test_chunk_boundary_consistency(self):
        # determinism must not depend on sample count crossing chunk edges
        spec = MomentSpec(2, (1,), (1,))
        e1, _ = moment_mc(spec, (1 << 16) + 17, seed=2)
        e2, _ = moment_mc(spec, (1 << 16) + 17, seed=2)
        assert e1 == e2


class TestPhiScalar:
    def test_phi1_is_positive_trace_average(self, rng):
        # resolves the sign convention: sphere average of <Tv,v> is +tr(T)/r
        T = random_hermitian(3, rng)
        assert phi_k_scalar(T, 1) == pytest.approx(np.trace(T).real / 3, abs=1e-12)
        vs = sample_directions(3, 40_000, seed=8)
        mc = np.mean([np.vdot(v, T @ v).real for v in vs])
        assert abs(mc - np.trace(T).real / 3) < 0.02
        assert abs(mc + np.trace(T).real / 3) > 0.05  # the flipped sign is wrong

    def test_phi2_identity_matrix(self):
        # phi_2(Id_2) = (2/(r(r+1)))((tr)^2 - tr Lambda^2) = (2/6)(4-1) = 1
        assert phi_k_scalar(np.eye(2), 2) == pytest.approx(1.0)

    def test_phi2_display_formula(self, rng):
        for r in (2, 3, 4, 5):
            for _ in range(5):
                T = random_hermitian(r, rng)
                eigs = np.linalg.eigvalsh(T)
                disp = 2 / (r * (r + 1)) * (np.trace(T).real**2 - elem_sym(eigs, 2))
                assert phi_k_scalar(T, 2) == pytest.approx(disp, abs=1e-10)

    def test_vanishes_on_zero(self):
        for k in (1, 2, 3):
            assert phi_k_scalar(np.zeros((3, 3)), k) == 0

    def test_positive_for_positive_definite(self, rng):
        from conftest import random_spd

        T = random_spd(4, rng)
        for k in range(1, 5):
            assert phi_k_scalar(T, k) > 0

    def test_unitary_invariance(self, rng):
        T = random_hermitian(4, rng)
        z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        U, _ = np.linalg.qr(z)
        for k in (1, 2, 3):
            assert phi_k_scalar(U.conj().T @ T @ U, k) == pytest.approx(
                phi_k_scalar(T, k), abs=1e-10)

    def test_closed_form_vs_moment_sums(self, rng):
        for r in (2, 3, 5):
            T = random_hermitian(r, rng)
            for k in range(1, 5):
                assert abs(phi_k_scalar(T, k) - phi_k_scalar_moments(T, k)) <= 1e-10

    def test_rejects_non_hermitian(self, rng):
        with pytest.raises(ValueError, match="Hermitian"):
            phi_k_scalar(rng.standard_normal((3, 3)) + np.diag([0, 1j, 0]), 2)


class TestPhiTensor:
    def test_degree_zero_is_one(self):
        t = random_curvature(2, 2, seed=0)
        assert phi_k_tensor(t, 0).coeff((), ()) == 1

    def test_degree_one_is_scaled_first_chern(self):
        t = random_curvature(2, 3, seed=1)
        c1 = chern_forms(t)[1]
        assert (phi_k_tensor(t, 1) - c1 / 3).max_abs() <= 1e-12

    def test_beyond_dimension_is_zero(self):
        t = random_curvature(1, 3, seed=2)
        assert phi_k_tensor(t, 2).is_zero()

    def test_headline_segre_identity(self):
        # (-1)^k C(r-1+k, k) phi_k = s_k
        for (n, r, seed) in ((2, 2, 3), (2, 3, 4), (3, 2, 5)):
            t = random_curvature(n, r, seed)
            ss = segre_forms(chern_forms(t), n)
            for k in range(n + 1):
                got = (-1.0) ** k * math.comb(r - 1 + k, k) * phi_k_tensor(t, k)
                assert (got - ss[k]).max_abs() <= 1e-10

    def test_multiset_enumeration_matches_naive_loop(self):
        t = random_curvature(2, 3, seed=6)
        for k in (1, 2):
            gap = (phi_k_tensor(t, k) - phi_k_tensor_naive(t, k)).max_abs()
            assert gap <= 1e-12

    def test_result_is_real(self):
        t = random_curvature(3, 2, seed=7)
        for k in range(1, 4):
            assert phi_k_tensor(t, k).is_real(1e-11)
