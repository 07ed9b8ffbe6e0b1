"""Dense complex linear-algebra primitives used by every other module.

Everything here works on plain ``numpy`` arrays (``complex128``) and is a
pure function of its inputs: no global state, safe for concurrent use.
The module-level tolerance constants are the package-wide defaults; each
operation also accepts them as keyword arguments.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import NotPSDError, SingularInputError, ValidationError

# Default tolerances.
EPS_UNITARY = 1e-10    # allowed ||U*U - I||_F for a matrix treated as unitary
EPS_HERMITIAN = 1e-12  # allowed ||A - A*||_F for a matrix treated as Hermitian
PSD_TOL = 1e-10        # eigenvalues above -PSD_TOL count as nonnegative
RANK_TOL = 1e-8        # smallest singular value that still counts as nonsingular


def as_matrix(a):
    """Coerce input to a finite 2-D complex array; 1-D becomes a column."""
    m = np.asarray(a, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise ValidationError(f"expected a matrix, got ndim={m.ndim}", code="BAD_SHAPE")
    if m.size and not np.all(np.isfinite(m)):
        raise ValidationError("matrix entries must be finite", code="NOT_FINITE")
    return m


def as_square(a):
    """Coerce input to a finite square complex matrix."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}", code="BAD_SHAPE")
    if m.size and not np.all(np.isfinite(m)):
        raise ValidationError("matrix entries must be finite", code="NOT_FINITE")
    return m


def frobenius(a) -> float:
    return float(np.linalg.norm(a))


def spectral_norm(a) -> float:
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def unitarity_defect(g) -> float:
    """||g*g - I||_F."""
    g = np.asarray(g, dtype=complex)
    return frobenius(g.conj().T @ g - np.eye(g.shape[1]))


def hermiticity_defect(a) -> float:
    """||a - a*||_F."""
    a = np.asarray(a, dtype=complex)
    return frobenius(a - a.conj().T)


def require_unitary(g, tol=EPS_UNITARY):
    g = as_square(g)
    defect = unitarity_defect(g)
    if defect > tol:
        raise ValidationError(
            f"matrix is not unitary: defect {defect:.3e} > {tol:.3e}", code="NOT_UNITARY"
        )
    return g


def require_hermitian(a, tol=EPS_HERMITIAN):
    a = as_square(a)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise ValidationError(
            f"matrix is not Hermitian: defect {defect:.3e} > {tol:.3e}", code="NOT_HERMITIAN"
        )
    return a


def hermitian_sqrt(a, psd_tol=PSD_TOL, herm_tol=EPS_HERMITIAN):
    """PSD square root of a Hermitian PSD matrix via eigendecomposition.

    Eigenvalues in ``[-psd_tol, 0)`` are clamped to zero so that inputs
    grazing the PSD boundary (e.g. I - X*X at the edge of the ball) still
    have a square root.  Raises :class:`NotPSDError` for anything below
    ``-psd_tol``.
    """
    a = require_hermitian(a, herm_tol)
    h = (a + a.conj().T) / 2
    w, v = np.linalg.eigh(h)
    if w.size and w[0] < -psd_tol:
        raise NotPSDError(f"eigenvalue {w[0]:.6e} below -psd_tol={psd_tol:.1e}")
    s = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    return (s + s.conj().T) / 2


def polar_unitary(y, rank_tol=RANK_TOL):
    """Polar factors of the adjoint: Y* = U P with U unitary, P = |Y*| PSD.

    Computed from the SVD of Y*; U is unique when Y is nonsingular.
    Equivalently Y = P U*, the normalization used by the chart maps.
    Raises :class:`SingularInputError` when the smallest singular value of Y
    is at or below ``rank_tol``.
    """
    y = as_square(y)
    v, s, wh = np.linalg.svd(y.conj().T)
    if s.size and s[-1] <= rank_tol:
        raise SingularInputError(
            f"smallest singular value {s[-1]:.3e} <= rank_tol={rank_tol:.1e}"
        )
    u = v @ wh
    p = (wh.conj().T * s) @ wh
    return u, (p + p.conj().T) / 2


def lower_triangularize(y, rank_tol=RANK_TOL):
    """Unique U in U(k) with T = Y U lower triangular and positive diagonal.

    Gram-Schmidt on the rows of Y (with a reorthogonalization sweep for
    stability): orthonormal rows u_1..u_k built in order, U = (u_1*, ..., u_k*).
    Raises :class:`SingularInputError` when a residual row norm falls to
    ``rank_tol``.
    """
    y = as_square(y)
    k = y.shape[0]
    rows = np.zeros((k, k), dtype=complex)
    for j in range(k):
        x = y[j].astype(complex)
        for _ in range(2):
            for i in range(j):
                x = x - (x @ rows[i].conj()) * rows[i]
        nrm = np.linalg.norm(x)
        if nrm <= rank_tol:
            raise SingularInputError(
                f"row {j} is dependent: residual norm {nrm:.3e} <= rank_tol"
            )
        rows[j] = x / nrm
    u = rows.conj().T
    return u, y @ u


def expm_reference(a):
    """Reference matrix exponential (scipy's scaling-and-squaring Pade).

    Used as the series-exponential oracle against which the closed-form
    block exponential is checked.
    """
    a = as_square(a)
    return scipy.linalg.expm(a)


def haar_unitary(n, seed=None):
    """Haar-distributed random unitary, deterministic under a fixed seed.

    QR of a complex Ginibre matrix with the phases of R's diagonal absorbed
    into Q, which makes the distribution exactly Haar.  ``seed`` may be an
    int or a ``numpy.random.Generator``.
    """
    n = int(n)
    if n < 1:
        raise ValidationError("n must be >= 1", code="BAD_DIMENSION")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def block_diag(*blocks):
    """Block-diagonal matrix with complex dtype."""
    return scipy.linalg.block_diag(*[np.asarray(b, dtype=complex) for b in blocks])
