"""Curvature data of a hermitian holomorphic bundle at a point.

A CurvatureTensor holds the normalised curvature Theta_hat = (i/2pi) * Theta
in a normal frame at the point: the coefficient array c[j,k,lam,mu] gives the
(1,1)-form entries

    Theta_hat[mu, lam] = sum_jk c[j,k,lam,mu] * (i dz_j ^ dzbar_k),

acting on fiber vectors by (Theta_hat v)_mu = sum_lam Theta_hat[mu,lam] v_lam.
The i/2pi normalisation lives entirely in this coefficient array; the
exterior module below never sees it.  The point metric is the identity
matrix (normal-frame gauge), so hermitian symmetry of the metric expansion
forces conj(c[j,k,lam,mu]) == c[k,j,mu,lam].

Chern forms come from the principal-minor expansion of det(Id + t*Theta_hat),
Segre forms from inverting the total Chern form degree by degree.
"""

from __future__ import annotations

import json

import numpy as np

from .exterior import Form, MultiIndex, factorial_power, top_ratio, wedge

DEFAULT_HE_TOL = 1e-9


class PreconditionError(ValueError):
    """A mathematical precondition of a check is not met by the input."""


class TensorValidationError(ValueError):
    """Input data violates a structural invariant of the curvature tensor."""


class Kaehler11:
    """A real (1,1)-form alpha = sum_jk g[j,k] * (i dz_j ^ dzbar_k), g Hermitian.

    Positive definite g makes this a Kaehler form value omega at the point.
    """

    __slots__ = ("n", "g")

    def __init__(self, g):
        g = np.asarray(g, dtype=complex)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {g.shape}")
        if not np.allclose(g, g.conj().T, atol=1e-12):
            raise ValueError("coefficient matrix must be Hermitian")
        self.n = g.shape[0]
        self.g = 0.5 * (g + g.conj().T)  # kill roundoff asymmetry

    @classmethod
    def euclidean(cls, n):
        return cls(np.eye(n))

    def is_positive_definite(self):
        if self.n == 0:
            return True
        return bool(np.linalg.eigvalsh(self.g).min() > 0)

    def to_form(self):
        coeffs = {}
        for j in range(self.n):
            for k in range(self.n):
                if self.g[j, k] != 0:
                    coeffs[(MultiIndex((j + 1,)), MultiIndex((k + 1,)))] = 1j * self.g[j, k]
        return Form(self.n, 1, 1, coeffs)

    def __add__(self, other):
        return Kaehler11(self.g + other.g)

    def __sub__(self, other):
        return Kaehler11(self.g - other.g)

    def __mul__(self, scalar):
        s = float(scalar)
        return Kaehler11(s * self.g)

    __rmul__ = __mul__

    def max_abs(self):
        return float(np.abs(self.g).max()) if self.n else 0.0

    def __repr__(self):
        return f"Kaehler11(n={self.n})"


def require_kaehler(w):
    if not isinstance(w, Kaehler11):
        raise TypeError("expected a Kaehler11")
    if not w.is_positive_definite():
        raise PreconditionError("omega must be positive definite")


class CurvatureTensor:
    """Normalised curvature (i/2pi)*Theta(E,h) at a point, in a normal frame."""

    __slots__ = ("n", "r", "c")

    def __init__(self, n, r, c=None, validate=True):
        self.n = int(n)
        self.r = int(r)
        if self.n < 1 or self.r < 1:
            raise ValueError("need n >= 1 and r >= 1")
        if c is None:
            c = np.zeros((self.n, self.n, self.r, self.r), dtype=complex)
        c = np.asarray(c, dtype=complex)
        if c.shape != (self.n, self.n, self.r, self.r):
            raise ValueError(f"coefficient array has shape {c.shape}, expected {(self.n, self.n, self.r, self.r)}")
        self.c = c
        if validate:
            self.validate()

    def validate(self, tol=1e-10):
        """Check conj(c[j,k,lam,mu]) == c[k,j,mu,lam]; report the worst offender."""
        dev = np.abs(self.c.conj() - self.c.transpose(1, 0, 3, 2))
        worst = float(dev.max())
        if worst > tol:
            j, k, lam, mu = np.unravel_index(int(dev.argmax()), dev.shape)
            raise TensorValidationError(
                "hermitian symmetry conj(c[j,k,lam,mu]) = c[k,j,mu,lam] violated at "
                f"(j,k,lambda,mu)=({j + 1},{k + 1},{lam + 1},{mu + 1}), deviation {worst:.3e}")

    def symmetrized(self):
        """The hermitian-symmetric part of the coefficient array."""
        return CurvatureTensor(self.n, self.r,
                               0.5 * (self.c + self.c.conj().transpose(1, 0, 3, 2)),
                               validate=False)

    def entry(self, mu, lam):
        """The (1,1)-form Theta_hat[mu, lam] (0-based frame indices)."""
        coeffs = {}
        for j in range(self.n):
            for k in range(self.n):
                v = self.c[j, k, lam, mu]
                if v != 0:
                    coeffs[(MultiIndex((j + 1,)), MultiIndex((k + 1,)))] = 1j * v
        return Form(self.n, 1, 1, coeffs)

    def __add__(self, other):
        if (self.n, self.r) != (other.n, other.r):
            raise ValueError("tensor shapes differ")
        return CurvatureTensor(self.n, self.r, self.c + other.c, validate=False)

    def __mul__(self, scalar):
        return CurvatureTensor(self.n, self.r, float(scalar) * self.c, validate=False)

    __rmul__ = __mul__

    def __repr__(self):
        return f"CurvatureTensor(n={self.n}, r={self.r})"


class ChernSequence:
    """Chern forms c_0..c_r of a curvature tensor; c_0 is the constant 1."""

    def __init__(self, forms):
        forms = list(forms)
        if not forms or not forms[0].allclose(Form.constant(forms[0].m), 0.0):
            raise ValueError("c_0 must be the constant-1 form")
        for k, f in enumerate(forms):
            if (f.p, f.q) != (k, k):
                raise ValueError(f"c_{k} has bidegree ({f.p},{f.q})")
        self.forms = forms

    def __len__(self):
        return len(self.forms)

    def __getitem__(self, k):
        return self.forms[k]

    def __iter__(self):
        return iter(self.forms)


def _det_wedge(entries, subset):
    """Determinant of the subset x subset minor of a matrix of commuting forms."""
    import itertools

    m = entries[subset[0]][subset[0]].m
    k = len(subset)
    acc = Form.zero(m, k, k)
    for perm in itertools.permutations(range(k)):
        sign = _perm_sign(perm)
        term = Form.constant(m)
        for a in range(k):
            term = wedge(term, entries[subset[a]][subset[perm[a]]])
        acc = acc + sign * term
    return acc


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def chern_forms(t):
    """Chern forms c_0..c_r via sums of principal minors of (Theta_hat[mu,lam]).

    c_k vanishes identically once 2k exceeds 2n; those degrees are skipped
    rather than expanded (the wedge would return zero anyway).
    """
    entries = [[t.entry(mu, lam) for lam in range(t.r)] for mu in range(t.r)]
    forms = [Form.constant(t.n)]
    from itertools import combinations

    for k in range(1, t.r + 1):
        if k > t.n:
            forms.append(Form.zero(t.n, k, k))
            continue
        acc = Form.zero(t.n, k, k)
        for subset in combinations(range(t.r), k):
            acc = acc + _det_wedge(entries, subset)
        forms.append(acc)
    return ChernSequence(forms)


def segre_forms(c, n):
    """Segre forms s_0..s_n inverting the total Chern form: sum_j c_j ^ s_{k-j} = 0."""
    if not isinstance(c, ChernSequence):
        c = ChernSequence(c)
    m = c[0].m
    s = [Form.constant(m)]
    for k in range(1, n + 1):
        acc = Form.zero(m, k, k)
        for j in range(1, k + 1):
            cj = c[j] if j < len(c) else Form.zero(m, j, j)
            acc = acc + wedge(cj, s[k - j])
        s.append(-1.0 * acc)
    return s


def direction_form(t, v):
    """The real (1,1)-form (i/2pi)<Theta v, v>/|v|^2 for a fiber direction v.

    Returns the Kaehler11 with matrix g[j,k] = sum_lm c[j,k,lam,mu] v_lam
    conj(v_mu) / |v|^2; invariant under scaling of v.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape != (t.r,):
        raise ValueError(f"direction has length {v.size}, expected {t.r}")
    nrm2 = float(np.vdot(v, v).real)
    if nrm2 == 0:
        raise ValueError("direction must be nonzero")
    g = np.einsum("jklm,l,m->jk", t.c, v, v.conj()) / nrm2
    return Kaehler11(g)


def mean_curvature(t, w):
    """Mean curvature T: the Hermitian r x r matrix with
    Theta_hat ^ omega^{n-1}/(n-1)! = T * omega^n/n!, entrywise by top ratio."""
    require_kaehler(w)
    if w.n != t.n:
        raise ValueError("omega dimension differs from base dimension")
    vol = factorial_power(w.to_form(), t.n)
    wpow = factorial_power(w.to_form(), t.n - 1)
    T = np.empty((t.r, t.r), dtype=complex)
    for mu in range(t.r):
        for lam in range(t.r):
            T[mu, lam] = top_ratio(wedge(t.entry(mu, lam), wpow), vol)
    return 0.5 * (T + T.conj().T)


def is_hermite_einstein(t, w, tol=DEFAULT_HE_TOL):
    """Whether T == lambda * Id within tol; returns (flag, lambda = tr(T)/r)."""
    T = mean_curvature(t, w)
    lam = float(np.trace(T).real) / t.r
    dev = float(np.abs(T - lam * np.eye(t.r)).max())
    return dev <= tol, lam


def project_to_he(t, w, lam):
    """Shift t by (omega/n) tensor (lam*Id - T) so the result has T' = lam*Id."""
    require_kaehler(w)
    T = mean_curvature(t, w)
    gap = float(lam) * np.eye(t.r) - T
    # added entry for Theta_hat[mu,lam] is (omega/n) * gap[mu,lam]
    add = np.einsum("jk,ml->jklm", w.g / t.n, gap)
    return CurvatureTensor(t.n, t.r, t.c + add)


def random_curvature(n, r, seed):
    """Seeded random tensor: complex standard normals, hermitian-symmetrized."""
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n, r, r)) + 1j * rng.standard_normal((n, n, r, r))
    c = 0.5 * (a + a.conj().transpose(1, 0, 3, 2))
    return CurvatureTensor(n, r, c)


def strong_flat_tensor(n, r, w, lam):
    """The equality-case instance Theta_hat = (lam/n) * omega tensor Id."""
    require_kaehler(w)
    c = np.einsum("jk,ml->jklm", (float(lam) / n) * w.g, np.eye(r))
    return CurvatureTensor(n, r, c)


def projectively_flat_tensor(n, r, seed, w=None, lam=None):
    """A random instance Theta_hat = beta tensor Id with beta a real (1,1)-form.

    If w and lam are given, beta is shifted by a multiple of omega so the
    mean curvature has trace r*lam (slope exactly lam).
    """
    rng = np.random.default_rng(seed)
    b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    beta = Kaehler11(0.5 * (b + b.conj().T))
    if w is not None and lam is not None:
        t0 = CurvatureTensor(n, 1, beta.g.reshape(n, n, 1, 1))
        cur = float(mean_curvature(t0, w)[0, 0].real)
        beta = beta + ((float(lam) - cur) / n) * w
    c = np.einsum("jk,ml->jklm", beta.g, np.eye(r))
    return CurvatureTensor(n, r, c)


def flatness_detectors(t, w, tol=1e-8):
    """Projective flatness and the stronger omega-proportional flatness.

    projectively_flat: Theta_hat == (1/r) c_1 tensor Id within tol (max norm
    on coefficients); strong_flat: Theta_hat == (lam/n) omega tensor Id.
    """
    require_kaehler(w)
    c1_mat = np.einsum("jkll->jk", t.c)
    eye = np.eye(t.r)
    proj = np.einsum("jk,ml->jklm", c1_mat / t.r, eye)
    pflat = float(np.abs(t.c - proj).max()) <= tol
    _, lam = is_hermite_einstein(t, w)
    strong = np.einsum("jk,ml->jklm", (lam / t.n) * w.g, eye)
    sflat = float(np.abs(t.c - strong).max()) <= tol
    return {"projectively_flat": pflat, "strong_flat": sflat}


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def tensor_to_dict(t):
    """JSON-ready dict {n, r, coeffs: [{j,k,lambda,mu,re,im}, ...]}, 1-based, zeros omitted."""
    coeffs = []
    for j in range(t.n):
        for k in range(t.n):
            for lam in range(t.r):
                for mu in range(t.r):
                    v = t.c[j, k, lam, mu]
                    if v != 0:
                        coeffs.append({"j": j + 1, "k": k + 1, "lambda": lam + 1, "mu": mu + 1,
                                       "re": float(v.real), "im": float(v.imag)})
    return {"n": t.n, "r": t.r, "coeffs": coeffs}


def tensor_from_dict(d, symmetrize=False, tol=1e-10):
    """Build a CurvatureTensor from its JSON dict.

    Omitted entries are zero.  The hermitian invariant is enforced unless
    symmetrize=True, in which case the symmetric part is taken instead.
    """
    try:
        n, r = int(d["n"]), int(d["r"])
        entries = d.get("coeffs", [])
    except (KeyError, TypeError) as exc:
        raise TensorValidationError(f"malformed tensor payload: {exc}") from exc
    c = np.zeros((n, n, r, r), dtype=complex)
    for e in entries:
        try:
            j, k = int(e["j"]) - 1, int(e["k"]) - 1
            lam, mu = int(e["lambda"]) - 1, int(e["mu"]) - 1
            val = complex(float(e["re"]), float(e.get("im", 0.0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise TensorValidationError(f"malformed coefficient entry {e!r}: {exc}") from exc
        if not (0 <= j < n and 0 <= k < n and 0 <= lam < r and 0 <= mu < r):
            raise TensorValidationError(f"coefficient entry {e!r} out of range for n={n}, r={r}")
        c[j, k, lam, mu] = val
    t = CurvatureTensor(n, r, c, validate=False)
    if symmetrize:
        return t.symmetrized()
    t.validate(tol)
    return t


def load_tensor(path, symmetrize=False):
    with open(path, "r", encoding="utf-8") as fh:
        return tensor_from_dict(json.load(fh), symmetrize=symmetrize)
