"""Geometry of the projectivized bundle over a single point.

At a fiber direction v the first Chern form of the dual tautological bundle
splits into a vertical Fubini-Study block and minus the horizontal
directional (1,1)-form of the curvature.  The splitting is realised on
C^(n+r-1): horizontal coordinates 1..n, vertical coordinates n+1..n+r-1.
Formulas only hold at the centre of an adapted chart, so the curvature
tensor is first rotated by a unitary sending v to the last frame vector.

The vertical block is normalised so its (r-1)-st power carries unit fiber
mass; with that choice the pushforward of the (r-1+k)-th power of the
combined form reproduces the k-th Segre form, which is what
pushforward_segre verifies (exactly through the moment expansion, or by
Monte Carlo averaging of wedge powers).
"""

from __future__ import annotations

import math

import numpy as np

from .curvature import (CurvatureTensor, Kaehler11, PreconditionError,
                        direction_form, is_hermite_einstein, require_kaehler)
from .exterior import Form, block_embed, factorial_power, wedge
from .kahler import gamma_rel
from .moments import phi_k_tensor, sample_directions

TWO_PI = 2.0 * math.pi


def unitary_sending_last_to(v):
    """A unitary matrix whose last column is v/|v| (deterministic in v)."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ValueError("direction must be nonzero")
    v = v / nrm
    r = v.size
    if r == 1:
        return v.reshape(1, 1)
    # complete v to an orthonormal basis; drop the standard vector most
    # parallel to v so the column set stays independent
    j0 = int(np.argmax(np.abs(v)))
    cols = [v] + [np.eye(r, dtype=complex)[:, j] for j in range(r) if j != j0]
    q, _ = np.linalg.qr(np.column_stack(cols))
    q[:, 0] *= np.vdot(q[:, 0], v)  # undo the QR phase so column 0 is exactly v
    return np.column_stack([q[:, 1:], q[:, 0]])


def rotate_tensor(t, U):
    """Curvature coefficients in the rotated frame e~_lam = sum_rho U[rho,lam] e_rho."""
    U = np.asarray(U, dtype=complex)
    if U.shape != (t.r, t.r):
        raise ValueError(f"unitary has shape {U.shape}, expected {(t.r, t.r)}")
    c = np.einsum("jktr,tl,rm->jklm", t.c, U, U.conj())
    return CurvatureTensor(t.n, t.r, c)


class FiberPointFrame:
    """Adapted unitary frame at a fiber direction: last frame vector is v."""

    __slots__ = ("tensor", "direction", "unitary", "rotated")

    def __init__(self, tensor, direction):
        v = np.asarray(direction, dtype=complex).reshape(-1)
        if v.shape != (tensor.r,):
            raise ValueError(f"direction has length {v.size}, expected {tensor.r}")
        self.tensor = tensor
        self.direction = v / np.linalg.norm(v)
        self.unitary = unitary_sending_last_to(v)
        self.rotated = rotate_tensor(tensor, self.unitary)

    @property
    def n(self):
        return self.tensor.n

    @property
    def r(self):
        return self.tensor.r

    @property
    def total_dim(self):
        return self.tensor.n + self.tensor.r - 1


def xi_at(fp):
    """The combined (1,1)-form at the fiber point, on C^(n+r-1).

    Vertical block: the Fubini-Study value (1/2pi) * sum_l i dxi_l ^ dxibar_l
    (unit fiber mass for its top vertical power); horizontal block: minus the
    directional curvature form of the rotated tensor.
    """
    m = fp.total_dim
    vertical = Kaehler11(np.eye(fp.r - 1) / TWO_PI)
    e_last = np.zeros(fp.r, dtype=complex)
    e_last[-1] = 1.0
    horizontal = direction_form(fp.rotated, e_last)
    return (block_embed(vertical.to_form(), fp.n, m)
            - block_embed(horizontal.to_form(), 0, m))


def pushforward_segre(t, k, method="exact", samples=100_000, seed=0):
    """Fiber integration of the (r-1+k)-th power of the combined form.

    Returns (-1)^k * binom(r-1+k, k) * E[theta_v ^ ... ^ theta_v] over fiber
    directions v: exactly through the moment expansion (method="exact"), or
    as a Monte Carlo average of wedge powers (method="mc").  Agrees with the
    k-th Segre form of the tensor.
    """
    if not 0 <= k <= t.n:
        raise ValueError(f"k={k} out of range [0, {t.n}]")
    factor = (-1.0) ** k * math.comb(t.r - 1 + k, k)
    if method == "exact":
        return factor * phi_k_tensor(t, k)
    if method != "mc":
        raise ValueError(f"unknown method {method!r}")
    if k == 0:
        return Form.constant(t.n)
    acc = Form.zero(t.n, k, k)
    for v in sample_directions(t.r, int(samples), seed):
        theta = direction_form(t, v).to_form()
        term = theta
        for _ in range(k - 1):
            term = wedge(term, theta)
        acc = acc + term
    return (factor / int(samples)) * acc


def _embedded_pieces(fp, w):
    """Xi and the embedded pullback of omega at the fiber point."""
    require_kaehler(w)
    if w.n != fp.n:
        raise ValueError("omega dimension differs from base dimension")
    m = fp.total_dim
    xi = xi_at(fp)
    omega_h = block_embed(w.to_form(), 0, m)
    return xi, omega_h


def verify_power_identity(t, w, v, k):
    """Residual of the degree-k top-form identity at a fiber direction.

    Checks Xi^{r-1+k}/(r-1+k)! ^ omega^{n-k}/(n-k)! against
    (-1)^k gamma_k(theta_v/omega) Xi^{r-1}/(r-1)! ^ omega^n/n! as top forms
    on C^(n+r-1); returns the max coefficient residual of the difference.
    """
    if not 1 <= k <= t.n:
        raise ValueError(f"k={k} out of range [1, {t.n}]")
    fp = FiberPointFrame(t, v)
    xi, omega_h = _embedded_pieces(fp, w)
    lhs = wedge(factorial_power(xi, t.r - 1 + k), factorial_power(omega_h, t.n - k))
    gam = gamma_rel(direction_form(t, v), w, k)
    rhs = ((-1.0) ** k * gam) * wedge(factorial_power(xi, t.r - 1),
                                      factorial_power(omega_h, t.n))
    return (lhs - rhs).max_abs()


def verify_slope_identity_general(t, w, v):
    """Residual of the rank-degree identity with gamma_1(theta_v/omega) in place of the slope."""
    return verify_power_identity(t, w, v, 1)


def verify_slope_identity(t, w, v, tol=1e-9):
    """Residual of the Hermite-Einstein form of the rank-degree identity.

    Requires t Hermite-Einstein w.r.t. omega within tol; the check then uses
    the constant slope: residual of Xi^r/r! ^ omega^{n-1}/(n-1)! plus
    lambda * Xi^{r-1}/(r-1)! ^ omega^n/n!.
    """
    he, lam = is_hermite_einstein(t, w, tol)
    if not he:
        raise PreconditionError(
            "tensor is not Hermite-Einstein within tolerance; "
            "use verify_slope_identity_general for arbitrary tensors")
    fp = FiberPointFrame(t, v)
    xi, omega_h = _embedded_pieces(fp, w)
    lhs = wedge(factorial_power(xi, t.r), factorial_power(omega_h, t.n - 1))
    rhs = wedge(factorial_power(xi, t.r - 1), factorial_power(omega_h, t.n))
    return (lhs + lam * rhs).max_abs()


def gamma_profile(t, w, k, samples=2000, seed=0):
    """Distribution of gamma_k(theta_v/omega) over sampled fiber directions.

    Returns {"min", "max", "mean", "spread"}; a spread ~ 0 for all degrees
    up to l is the pointwise l-Hermite-Einstein diagnostic (degree 1
    recovers the Hermite-Einstein condition itself).
    """
    require_kaehler(w)
    vals = np.array([gamma_rel(direction_form(t, v), w, k)
                     for v in sample_directions(t.r, int(samples), seed)])
    return {"min": float(vals.min()), "max": float(vals.max()),
            "mean": float(vals.mean()), "spread": float(vals.max() - vals.min())}
