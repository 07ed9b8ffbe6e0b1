"""Ball charts on the Grassmannian of complex k-planes in C^n.

A subspace is represented by its rank-k orthogonal projector, which is
gauge-free: it does not depend on the frame chosen to span the subspace.
Charts are indexed by permutations with two increasing runs; a chart sends
a subspace to a matrix X with X*X < I (an open matrix ball), and back via
the block unitary built from X.  Local sections into U(n) and a globally
defined section (first valid chart in a fixed priority order) are provided.
"""

from __future__ import annotations

import enum
import itertools

import numpy as np

from .errors import NoChartError, NotPSDError, OutOfChartError, SingularInputError, ValidationError
from .linalg import (
    EPS_UNITARY,
    PSD_TOL,
    RANK_TOL,
    as_matrix,
    as_square,
    hermitian_sqrt,
    hermiticity_defect,
    frobenius,
    polar_unitary,
    spectral_norm,
)


class ChartOrdering(enum.Enum):
    """Priority order in which charts are tried by the global section.

    LEXICOGRAPHIC sorts the permutations by their image tuple, smallest
    first (identity chart first).  LAST_INDEX sorts by the designated row
    block, largest rows first.  The two enumerations provably coincide
    (the complement map reverses lexicographic order); both are kept so
    either convention can be requested explicitly.
    """

    LEXICOGRAPHIC = "lexicographic"
    LAST_INDEX = "last-index"


def identity_chart(n):
    return tuple(range(1, n + 1))


def validate_chart(sigma, k, n=None):
    """Check that sigma is a valid chart permutation for G(k, C^n).

    ``sigma`` is the 1-based image tuple (sigma(1), ..., sigma(n)); its first
    n-k entries and its last k entries must each be strictly increasing.
    """
    sigma = tuple(int(s) for s in sigma)
    m = len(sigma)
    if n is not None and m != n:
        raise ValidationError(f"chart length {m} != n={n}", code="BAD_CHART")
    if sorted(sigma) != list(range(1, m + 1)):
        raise ValidationError(f"{sigma} is not a permutation of 1..{m}", code="BAD_CHART")
    if not 1 <= k <= m:
        raise ValidationError(f"invalid block size k={k} for n={m}", code="BAD_CHART")
    top, bottom = sigma[: m - k], sigma[m - k :]
    if any(a >= b for a, b in zip(top, top[1:])) or any(
        a >= b for a, b in zip(bottom, bottom[1:])
    ):
        raise ValidationError(
            f"chart {sigma} must have two increasing runs of lengths {m - k} and {k}",
            code="BAD_CHART",
        )
    return sigma


def chart_permutations(n, k, ordering=ChartOrdering.LEXICOGRAPHIC):
    """All C(n, k) chart permutations for G(k, C^n), in priority order."""
    perms = []
    universe = set(range(1, n + 1))
    for bottom in itertools.combinations(range(1, n + 1), k):
        top = tuple(sorted(universe - set(bottom)))
        perms.append(top + bottom)
    if ordering is ChartOrdering.LEXICOGRAPHIC:
        perms.sort()
    else:
        perms.sort(key=lambda s: s[n - k :], reverse=True)
    return perms


def permutation_unitary(sigma):
    """Permutation matrix sending basis vector e_j to e_{sigma(j)}."""
    sigma = tuple(int(s) for s in sigma)
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValidationError(f"{sigma} is not a permutation of 1..{n}", code="BAD_CHART")
    u = np.zeros((n, n), dtype=complex)
    for j, sj in enumerate(sigma):
        u[sj - 1, j] = 1.0
    return u


def require_ball(x, margin=0.0):
    """Validate an open-ball coordinate: largest singular value < 1 - margin."""
    x = as_matrix(x)
    top = spectral_norm(x)
    if top >= 1.0 - margin:
        raise ValidationError(
            f"spectral norm {top:.6f} not inside the open ball (margin {margin})",
            code="BALL_NORM",
        )
    return x


def require_closed_ball(x, tol=EPS_UNITARY):
    x = as_matrix(x)
    top = spectral_norm(x)
    if top > 1.0 + tol:
        raise ValidationError(
            f"spectral norm {top:.6f} outside the closed ball", code="BALL_NORM"
        )
    return x


def ball_unitary(x, psd_tol=PSD_TOL):
    """Block unitary [[(I-XX*)^1/2, X], [-X*, (I-X*X)^1/2]] from a ball coordinate.

    Unitary for every X in the closed ball X*X <= I.  Both square roots are
    built from one SVD of X, so they intertwine with X exactly and the
    result stays unitary to machine precision even on the ball boundary,
    where separate eigendecompositions would lose half the digits.
    A 1-D ``x`` is treated as a single column.
    """
    x = as_matrix(x)
    r, k = x.shape
    n = r + k
    u, s, vh = np.linalg.svd(x)
    if s.size and s[0] ** 2 > 1.0 + psd_tol:
        raise NotPSDError(f"X*X has eigenvalue {s[0]**2:.6e} above 1")
    c = np.sqrt(1.0 - np.minimum(s, 1.0) ** 2)
    top = (u * np.concatenate([c, np.ones(r - c.size)])) @ u.conj().T
    bottom = (vh.conj().T * np.concatenate([c, np.ones(k - c.size)])) @ vh
    w = np.empty((n, n), dtype=complex)
    w[:r, :r] = (top + top.conj().T) / 2
    w[:r, r:] = x
    w[r:, :r] = -x.conj().T
    w[r:, r:] = (bottom + bottom.conj().T) / 2
    return w


def frame_of_unitary(g, k):
    """Last k columns of a unitary: an orthonormal frame of the image plane."""
    g = as_square(g)
    k = int(k)
    if not 1 <= k <= g.shape[0]:
        raise ValidationError(f"invalid k={k} for n={g.shape[0]}", code="BAD_DIMENSION")
    return g[:, g.shape[0] - k :].copy()


def projector_of_frame(f):
    """Orthogonal projector onto the span of an orthonormal frame.

    Invariant under f -> f @ q for unitary q, so the result depends only on
    the subspace.
    """
    f = as_matrix(f)
    p = f @ f.conj().T
    return (p + p.conj().T) / 2


def projector_of_unitary(g, k):
    """Projector onto the span of the last k columns of g."""
    return projector_of_frame(frame_of_unitary(g, k))


def frame_of_projector(p, tol=1e-8):
    """Orthonormal frame spanning the range of a rank-k orthogonal projector.

    Columns are the eigenvectors of the top (unit) eigenvalues in descending
    eigenvalue order; deterministic for a given input.
    """
    p = as_square(p)
    if hermiticity_defect(p) > tol:
        raise ValidationError("projector is not Hermitian", code="NOT_PROJECTOR")
    h = (p + p.conj().T) / 2
    if frobenius(h @ h - h) > tol:
        raise ValidationError("matrix is not idempotent", code="NOT_PROJECTOR")
    trace = float(np.trace(h).real)
    k = int(round(trace))
    n = h.shape[0]
    if abs(trace - k) > tol or not 1 <= k <= n:
        raise ValidationError(f"projector trace {trace:.6f} is not integral", code="NOT_PROJECTOR")
    w, v = np.linalg.eigh(h)
    if w[n - k] < 0.5:
        raise ValidationError("projector spectrum is not {0, 1}", code="NOT_PROJECTOR")
    return v[:, ::-1][:, :k]


def chart_coordinates(p, sigma, rank_tol=RANK_TOL):
    """Ball coordinate of a subspace in chart sigma (the chart map).

    Extracts a frame from the projector, permutes its rows by sigma, and
    polar-normalizes the bottom k x k block to be PSD; what remains on top is
    the coordinate X.  Independent of the frame choice.  Raises
    :class:`OutOfChartError` when the bottom block is singular at
    ``rank_tol``, i.e. the subspace lies outside this chart.
    """
    f = frame_of_projector(p)
    n, k = f.shape
    sigma = validate_chart(sigma, k, n)
    f_perm = f[np.array(sigma) - 1, :]
    y = f_perm[n - k :, :]
    try:
        u, _ = polar_unitary(y, rank_tol)
    except SingularInputError as exc:
        raise OutOfChartError(f"block for chart {sigma} is singular: {exc}") from exc
    return f_perm[: n - k, :] @ u


def chart_point(x, sigma, psd_tol=PSD_TOL):
    """Subspace (projector) with ball coordinate X in chart sigma.

    Inverse of :func:`chart_coordinates` on its chart.
    """
    x = as_matrix(x)
    r, k = x.shape
    sigma = validate_chart(sigma, k, r + k)
    y = hermitian_sqrt(np.eye(k) - x.conj().T @ x, psd_tol)
    f = permutation_unitary(sigma) @ np.vstack([x, y])
    return projector_of_frame(f)


def select_chart(p, ordering=ChartOrdering.LEXICOGRAPHIC, rank_tol=RANK_TOL):
    """First chart (in the ordering's priority) that contains the subspace.

    Together with :func:`local_section` this realizes a globally defined
    section.  Raises :class:`NoChartError` only for malformed projectors.
    """
    f = frame_of_projector(p)
    n, k = f.shape
    for sigma in chart_permutations(n, k, ordering):
        y = f[np.array(sigma[n - k :]) - 1, :]
        s = np.linalg.svd(y, compute_uv=False)
        if s[-1] > rank_tol:
            return sigma
    raise NoChartError(f"no chart contains the given point at rank_tol={rank_tol:.1e}")


def local_section(p, sigma, rank_tol=RANK_TOL, psd_tol=PSD_TOL):
    """Canonical unitary over a subspace in chart sigma.

    Satisfies the section law: the span of its last k columns is the input
    subspace.
    """
    x = chart_coordinates(p, sigma, rank_tol)
    return permutation_unitary(sigma) @ ball_unitary(x, psd_tol)


def global_section(p, ordering=ChartOrdering.LEXICOGRAPHIC, rank_tol=RANK_TOL, psd_tol=PSD_TOL):
    """Canonical unitary over a subspace, using the first valid chart."""
    return local_section(p, select_chart(p, ordering, rank_tol), rank_tol, psd_tol)


def _inv_sqrt_pd(g):
    g = as_square(g)
    w, v = np.linalg.eigh((g + g.conj().T) / 2)
    if w.size and w[0] <= 0.0:
        raise NotPSDError(f"matrix is not positive definite (eigenvalue {w[0]:.3e})")
    return (v / np.sqrt(w)) @ v.conj().T


def ball_to_affine(x):
    """Affine chart matrix Z = X (I - X*X)^(-1/2) of an open-ball coordinate."""
    x = require_ball(x)
    k = x.shape[1]
    return x @ _inv_sqrt_pd(np.eye(k) - x.conj().T @ x)


def affine_to_ball(z):
    """Open-ball coordinate X = Z (Z*Z + I)^(-1/2) of an affine chart matrix."""
    z = as_matrix(z)
    k = z.shape[1]
    return z @ _inv_sqrt_pd(z.conj().T @ z + np.eye(k))
