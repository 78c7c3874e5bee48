"""Unitary-invariant moments on the unit sphere of C^r and the phi_k functional.

The diagonal moment of |v_{j_1}|^2 ... |v_{j_k}|^2 against the normalised
sphere measure is the exact rational m_1! ... m_r! (r-1)! / (r-1+k)!, where
m_l counts how often l appears.  The general balanced moment

    E[ v_{l_1} ... v_{l_k} * conj(v_{m_1}) ... conj(v_{m_k}) ]

equals perm(M) * (r-1)!/(r-1+k)! with M_{ab} = [l_a == m_b]: writing the
sphere average as a Gaussian average splits radius from direction, and the
Gaussian side is a Wick pairing sum.  Everything is computed in exact
integer/rational arithmetic; floats only appear at form assembly and in the
Monte Carlo oracle.

phi_k averages <T v, v>^k over the sphere.  For a Hermitian matrix this is
sigma_k(eigenvalues)/binom(r-1+k, k) (sigma_k complete homogeneous); for a
curvature tensor the same average of the directional (1,1)-form produces,
up to the sign (-1)^k and the binomial factor, the k-th Segre form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product

import numpy as np

from .exterior import Form, wedge
from .symfun import SymSeq, elem_sym, newton_convert

_MC_CHUNK = 1 << 16


@dataclass(frozen=True)
class MomentSpec:
    """Index data for a sphere moment in dimension r (1-based indices)."""

    r: int
    lambdas: tuple
    mus: tuple

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(int(i) for i in self.lambdas))
        object.__setattr__(self, "mus", tuple(int(i) for i in self.mus))
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if len(self.lambdas) != len(self.mus):
            raise ValueError("lambdas and mus must have equal length")
        for i in self.lambdas + self.mus:
            if not 1 <= i <= self.r:
                raise ValueError(f"index {i} out of range [1, {self.r}]")

    @property
    def k(self):
        return len(self.lambdas)


def moment_diagonal(r, multiplicities):
    """Exact moment of prod_l |v_l|^(2 m_l): m_1!...m_r!(r-1)!/(r-1+k)!."""
    mult = [int(m) for m in multiplicities]
    if r < 1:
        raise ValueError("r must be >= 1")
    if len(mult) != r or any(m < 0 for m in mult):
        raise ValueError("need r nonnegative multiplicities")
    k = sum(mult)
    num = math.factorial(r - 1)
    for m in mult:
        num *= math.factorial(m)
    return Fraction(num, math.factorial(r - 1 + k))


def permanent_int(rows):
    """Permanent of a small integer matrix, by Ryser's inclusion-exclusion."""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    total = 0
    for mask in range(1, 1 << n):
        bits = bin(mask).count("1")
        prod = 1
        for row in rows:
            s = 0
            m = mask
            j = 0
            while m:
                if m & 1:
                    s += row[j]
                m >>= 1
                j += 1
            prod *= s
            if prod == 0:
                break
        total += (-1) ** (n - bits) * prod
    return total


def moment_wick(spec):
    """Exact balanced moment perm(M) * (r-1)!/(r-1+k)! with M_{ab} = [l_a == m_b].

    Unbalanced index multisets give permanent 0, matching the phase-rotation
    symmetry of the sphere measure.  Coincides with moment_diagonal whenever
    lambdas and mus are equal as multisets.
    """
    k = spec.k
    if k == 0:
        return Fraction(1)
    M = [[1 if la == mb else 0 for mb in spec.mus] for la in spec.lambdas]
    return Fraction(permanent_int(M) * math.factorial(spec.r - 1),
                    math.factorial(spec.r - 1 + k))


def moment_mc(spec, samples, seed):
    """Monte Carlo estimate of a sphere moment; returns (estimate, stderr).

    Directions are normalised complex Gaussians.  Sampling is chunked with a
    per-chunk generator seeded by (seed, chunk index), so the result is a
    deterministic function of (spec, samples, seed) however chunks are run.
    """
    samples = int(samples)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if spec.k == 0:
        return complex(1.0), 0.0
    lam = np.array(spec.lambdas) - 1
    mu = np.array(spec.mus) - 1
    acc = 0j
    acc_sq = 0.0
    done = 0
    chunk_idx = 0
    while done < samples:
        count = min(_MC_CHUNK, samples - done)
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(int(seed), chunk_idx)))
        z = rng.standard_normal((count, spec.r)) + 1j * rng.standard_normal((count, spec.r))
        v = z / np.linalg.norm(z, axis=1, keepdims=True)
        vals = np.prod(v[:, lam], axis=1) * np.prod(v[:, mu].conj(), axis=1)
        acc += vals.sum()
        acc_sq += float((vals.real**2 + vals.imag**2).sum())
        done += count
        chunk_idx += 1
    mean = acc / samples
    if samples == 1:
        return complex(mean), 0.0
    var = max(acc_sq - samples * abs(mean) ** 2, 0.0) / (samples - 1)
    return complex(mean), float(math.sqrt(var / samples))


def sample_directions(r, count, seed):
    """count unit vectors in C^r, rows of the returned array; seeded."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, r)) + 1j * rng.standard_normal((count, r))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def _check_hermitian(T, tol=1e-10):
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError("expected a square matrix")
    scale = max(1.0, float(np.abs(T).max()))
    if float(np.abs(T - T.conj().T).max()) > tol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    return T


def phi_k_scalar(T, k):
    """Sphere average of <T v, v>^k for Hermitian T.

    Equals sigma_k(eigenvalues) / binom(r-1+k, k); positive for positive
    definite T.  sigma_k is produced from the elementary symmetric
    polynomials through the Newton-type recursion.
    """
    T = _check_hermitian(T)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1.0
    r = T.shape[0]
    eigs = np.linalg.eigvalsh(T)
    gammas = SymSeq([1.0] + [elem_sym(eigs, j) for j in range(1, min(k, r) + 1)])
    sigma_k = newton_convert(gammas, k)[k]
    return float(sigma_k) / math.comb(r - 1 + k, k)


def _pair_multisets(r, k):
    """Multisets of k index pairs (lam, mu) in [1,r]^2 with their orbit weights.

    Yields (pairs, weight) with weight = k!/prod(multiplicities!), covering
    the r^(2k) ordered tuples without repetition.
    """
    all_pairs = [(la, mu) for la in range(1, r + 1) for mu in range(1, r + 1)]
    for combo in combinations_with_replacement(all_pairs, k):
        weight = math.factorial(k)
        run = 1
        for a, b in zip(combo, combo[1:]):
            run = run + 1 if a == b else 1
            if run > 1:
                weight //= run
        yield combo, weight


def phi_k_scalar_moments(T, k):
    """Moment-sum evaluation of phi_k: sum over index tuples weighted by moment_wick.

    Slower than the closed form; kept as the independent cross-check path.
    """
    T = _check_hermitian(T)
    if k == 0:
        return 1.0
    r = T.shape[0]
    acc = 0j
    for pairs, weight in _pair_multisets(r, k):
        spec = MomentSpec(r, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))
        w = moment_wick(spec)
        if w == 0:
            continue
        entry_prod = 1.0 + 0j
        for la, mu in pairs:
            entry_prod *= T[mu - 1, la - 1]
        acc += weight * float(w) * entry_prod
    return float(acc.real)


def phi_k_tensor(t, k):
    """Sphere average of the k-th wedge power of the directional (1,1)-form.

    Exact expansion: sum over index tuples of the wedge of curvature entries
    times the exact moment; the enumeration runs over unordered multisets of
    (lambda, mu) pairs with multiplicity weights.  Returns a real (k,k)-form;
    (-1)^k * binom(r-1+k, k) * phi_k_tensor(t, k) is the k-th Segre form.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return Form.constant(t.n)
    if k > t.n:
        return Form.zero(t.n, k, k)
    entries = {(la, mu): t.entry(mu - 1, la - 1) for la in range(1, t.r + 1)
               for mu in range(1, t.r + 1)}
    acc = Form.zero(t.n, k, k)
    for pairs, weight in _pair_multisets(t.r, k):
        spec = MomentSpec(t.r, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))
        mom = moment_wick(spec)
        if mom == 0:
            continue
        term = entries[pairs[0]]
        for pair in pairs[1:]:
            term = wedge(term, entries[pair])
        acc = acc + (weight * float(mom)) * term
    return acc


def phi_k_tensor_naive(t, k):
    """Reference r^(2k) loop for phi_k_tensor; test oracle only."""
    if k == 0:
        return Form.constant(t.n)
    if k > t.n:
        return Form.zero(t.n, k, k)
    acc = Form.zero(t.n, k, k)
    idx = range(1, t.r + 1)
    for lams in product(idx, repeat=k):
        for mus in product(idx, repeat=k):
            mom = moment_wick(MomentSpec(t.r, lams, mus))
            if mom == 0:
                continue
            term = t.entry(mus[0] - 1, lams[0] - 1)
            for la, mu in zip(lams[1:], mus[1:]):
                term = wedge(term, t.entry(mu - 1, la - 1))
            acc = acc + float(mom) * term
    return acc
