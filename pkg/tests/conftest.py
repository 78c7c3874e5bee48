import itertools

import numpy as np
import pytest

from segreform.exterior import Form, MultiIndex


def random_form(m, p, q, rng, density=1.0):
    """Random (p,q)-form on C^m with complex standard-normal coefficients."""
    coeffs = {}
    for I in itertools.combinations(range(1, m + 1), p):
        for J in itertools.combinations(range(1, m + 1), q):
            if rng.uniform() <= density:
                coeffs[(MultiIndex(I), MultiIndex(J))] = complex(
                    rng.standard_normal(), rng.standard_normal())
    return Form(m, p, q, coeffs)


def random_hermitian(n, rng, scale=1.0):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * 0.5 * (a + a.conj().T)


def random_spd(n, rng, shift=0.5):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return a @ a.conj().T + shift * np.eye(n)


def real_one_one(m, g):
    """The real (1,1)-form sum g[j,k] i dz_j ^ dzbar_k as a raw Form."""
    g = np.asarray(g, dtype=complex)
    coeffs = {}
    for j in range(m):
        for k in range(m):
            if g[j, k] != 0:
                coeffs[(MultiIndex((j + 1,)), MultiIndex((k + 1,)))] = 1j * g[j, k]
    return Form(m, 1, 1, coeffs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
