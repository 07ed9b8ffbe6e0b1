"""Closed-form exponential of off-diagonal skew-Hermitian generators.

exp of [[0, B], [-B*, 0]] has the block form of the ball-coordinate unitary;
the blocks are entire functions of the small Gram matrix B*B and are
evaluated through its eigendecomposition, never through the power series.
Functions with removable singularities at zero switch to a short Taylor
expansion below t = 1e-8.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import NotPSDError, PrincipalRangeWarning
from .linalg import PSD_TOL, as_matrix, spectral_norm

_TAYLOR_CUT = 1e-8


def _eval_psd(func, m, psd_tol=PSD_TOL, cap_one=False):
    """func applied to the eigenvalues of a Hermitian PSD matrix."""
    h = (m + m.conj().T) / 2
    w, v = np.linalg.eigh(h)
    if w.size and w[0] < -psd_tol:
        raise NotPSDError(f"eigenvalue {w[0]:.6e} below -psd_tol={psd_tol:.1e}")
    w = np.clip(w, 0.0, 1.0 if cap_one else None)
    return (v * func(w)) @ v.conj().T


def _sinc_sqrt(t):
    """sin(sqrt(t)) / sqrt(t), entire in t."""
    out = np.empty_like(t)
    small = t < _TAYLOR_CUT
    ts = t[small]
    out[small] = 1.0 - ts / 6.0 + ts**2 / 120.0 - ts**3 / 5040.0
    r = np.sqrt(t[~small])
    out[~small] = np.sin(r) / r
    return out


def _cos_sqrt_m1_over(t):
    """(cos(sqrt(t)) - 1) / t, entire in t."""
    out = np.empty_like(t)
    small = t < _TAYLOR_CUT
    ts = t[small]
    out[small] = -0.5 + ts / 24.0 - ts**2 / 720.0 + ts**3 / 40320.0
    tb = t[~small]
    out[~small] = (np.cos(np.sqrt(tb)) - 1.0) / tb
    return out


def _asin_sqrt_over(t):
    """arcsin(sqrt(t)) / sqrt(t), analytic for t < 1."""
    out = np.empty_like(t)
    small = t < _TAYLOR_CUT
    ts = t[small]
    out[small] = 1.0 + ts / 6.0 + 3.0 * ts**2 / 40.0 + 15.0 * ts**3 / 336.0
    r = np.sqrt(t[~small])
    out[~small] = np.arcsin(r) / r
    return out


def _sqrt1m_m1_over(t):
    """(sqrt(1 - t) - 1) / t, analytic for t < 1, continuous at t = 1."""
    out = np.empty_like(t)
    small = t < _TAYLOR_CUT
    ts = t[small]
    out[small] = -0.5 - ts / 8.0 - ts**2 / 16.0 - 5.0 * ts**3 / 128.0
    tb = t[~small]
    out[~small] = (np.sqrt(1.0 - tb) - 1.0) / tb
    return out


def generator_matrix(b):
    """Skew-Hermitian embedding [[0, B], [-B*, 0]] of a rectangular block."""
    b = as_matrix(b)
    k1, k2 = b.shape
    k = np.zeros((k1 + k2, k1 + k2), dtype=complex)
    k[:k1, k1:] = b
    k[k1:, :k1] = -b.conj().T
    return k


def exp_generator(b):
    """Closed-form exponential of the off-diagonal generator of B.

    Blocks: cos of the square roots of BB* and B*B on the diagonal,
    B times the matrix sinc of B*B off it.  The large diagonal block is
    evaluated through the small Gram matrix, so only the k2 x k2
    eigenproblem is solved.  Agrees with the series exponential of
    ``generator_matrix(b)``.
    """
    b = as_matrix(b)
    k1, k2 = b.shape
    gram = b.conj().T @ b
    x = b @ _eval_psd(_sinc_sqrt, gram)
    c2 = _eval_psd(lambda t: np.cos(np.sqrt(t)), gram)
    c1 = np.eye(k1) + b @ _eval_psd(_cos_sqrt_m1_over, gram) @ b.conj().T
    u = np.empty((k1 + k2, k1 + k2), dtype=complex)
    u[:k1, :k1] = c1
    u[:k1, k1:] = x
    u[k1:, :k1] = -x.conj().T
    u[k1:, k1:] = c2
    return u


def generator_to_ball(b):
    """Ball coordinate X = B sinc(sqrt(B*B)) of the exponential of B.

    ``exp_generator(b)`` equals ``ball_unitary(X)`` exactly when every
    singular value of B is at most pi/2; beyond that the cos block turns
    negative while the ball unitary keeps PSD diagonal blocks, and a
    :class:`PrincipalRangeWarning` is emitted.
    """
    b = as_matrix(b)
    if spectral_norm(b) > math.pi / 2 + 1e-12:
        warnings.warn(
            "generator has a singular value above pi/2; the exponential no longer "
            "matches the ball unitary of the returned coordinate",
            PrincipalRangeWarning,
            stacklevel=2,
        )
    return b @ _eval_psd(_sinc_sqrt, b.conj().T @ b)


def ball_to_generator(x):
    """Generator B = X asin-over(X*X) whose exponential has ball coordinate X.

    Inverse of :func:`generator_to_ball` on the principal range: all singular
    values of the result lie in [0, pi/2).
    """
    x = as_matrix(x)
    top = spectral_norm(x)
    if top >= 1.0:
        raise NotPSDError(f"spectral norm {top:.6f} >= 1: outside the open ball")
    return x @ _eval_psd(_asin_sqrt_over, x.conj().T @ x, cap_one=True)


def sqrt_complement(x, psd_tol=PSD_TOL):
    """(I - X X*)^(1/2) through the smaller Gram matrix X*X.

    Uses the rank-structured identity
    I + X (X*X)^(-1/2) [(I - X*X)^(1/2) - I] (X*X)^(-1/2) X*,
    whose middle factor is an entire function of X*X (value -1/2 at zero),
    so only a k2 x k2 eigenproblem is needed for a k1 x k2 input.
    Raises :class:`NotPSDError` when X*X has an eigenvalue above 1.
    """
    x = as_matrix(x)
    k1 = x.shape[0]
    gram = x.conj().T @ x
    w = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
    if w.size and w[-1] > 1.0 + psd_tol:
        raise NotPSDError(f"X*X has eigenvalue {w[-1]:.6e} above 1")
    mid = _eval_psd(_sqrt1m_m1_over, gram, psd_tol, cap_one=True)
    out = np.eye(k1) + x @ mid @ x.conj().T
    return (out + out.conj().T) / 2
