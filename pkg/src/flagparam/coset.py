"""Canonical coset decomposition of U(n) over a multiplicity profile.

A unitary is peeled level by level: at each level the plane spanned by the
last block of columns is sent through a chart, the corresponding canonical
section is divided out, and the recursion continues on the upper-left block.
What survives at the end is a block-diagonal unitary.  The ball coordinates
collected on the way down parametrize the flag manifold
U(n) / (U(k_1) x ... x U(k_m)); the block-diagonal residue is the fiber.

Also here: the section of a Grassmannian assembled from rank-one
(projective) factors via row triangularization, and the angle/direction
(Jarlskog) form of a ball vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import (
    EPS_UNITARY,
    PSD_TOL,
    RANK_TOL,
    as_matrix,
    as_square,
    block_diag,
    frobenius,
    lower_triangularize,
    require_unitary,
    spectral_norm,
)
from .charts import (
    ChartOrdering,
    ball_unitary,
    chart_coordinates,
    frame_of_projector,
    identity_chart,
    permutation_unitary,
    projector_of_unitary,
    select_chart,
    validate_chart,
)


def validate_profile(ks, n=None):
    """Validate a multiplicity profile (k_1, ..., k_m); returns it as a tuple."""
    try:
        ks = tuple(int(k) for k in ks)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"profile must be a sequence of ints: {exc}", code="PROFILE_VALUES")
    if len(ks) == 0 or any(k < 1 for k in ks):
        raise ValidationError(f"profile entries must be >= 1, got {ks}", code="PROFILE_VALUES")
    if n is not None and sum(ks) != n:
        raise ValidationError(f"profile {ks} sums to {sum(ks)}, expected {n}", code="PROFILE_SUM")
    return ks


def level_dimensions(profile):
    """Per-level (n_j, k_j) pairs, outermost level first.

    Level j lives on G(k_j, C^(n_j)) with n_j = k_1 + ... + k_j; the list runs
    j = m, m-1, ..., 2 and is empty for a single-block profile.
    """
    sizes = np.cumsum(profile)
    return [(int(sizes[j]), int(profile[j])) for j in range(len(profile) - 1, 0, -1)]


@dataclass(frozen=True, eq=False)
class FlagCoordinates:
    """Chart data of a point of the flag manifold for a given profile.

    ``xs`` holds one ball coordinate per level, outermost level first;
    ``charts`` records which chart produced each coordinate (needed to map
    back, and for reproducible serialization).
    """

    profile: tuple
    xs: tuple
    charts: tuple

    def __post_init__(self):
        profile = validate_profile(self.profile)
        dims = level_dimensions(profile)
        xs = tuple(as_matrix(x) for x in self.xs)
        charts = tuple(tuple(int(s) for s in c) for c in self.charts)
        if len(xs) != len(dims) or len(charts) != len(dims):
            raise ValidationError(
                f"expected {len(dims)} levels for profile {profile}, "
                f"got {len(xs)} coordinates and {len(charts)} charts",
                code="PROFILE_SUM",
            )
        for (nj, kj), x, sigma in zip(dims, xs, charts):
            if x.shape != (nj - kj, kj):
                raise ValidationError(
                    f"level on G({kj}, C^{nj}) needs a {nj - kj}x{kj} coordinate, "
                    f"got {x.shape}",
                    code="BAD_SHAPE",
                )
            validate_chart(sigma, kj, nj)
            top = spectral_norm(x)
            if top >= 1.0:
                raise ValidationError(
                    f"level coordinate has spectral norm {top:.6f} >= 1", code="BALL_NORM"
                )
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "charts", charts)

    @property
    def n(self):
        return sum(self.profile)

    @property
    def num_levels(self):
        return len(self.xs)


@dataclass(frozen=True, eq=False)
class BlockDiagonalUnitary:
    """Element of U(k_1) x ... x U(k_m), stored as its diagonal blocks."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(require_unitary(as_square(b), EPS_UNITARY) for b in self.blocks)
        if not blocks:
            raise ValidationError("at least one block is required", code="PROFILE_VALUES")
        object.__setattr__(self, "blocks", blocks)

    @property
    def profile(self):
        return tuple(b.shape[0] for b in self.blocks)

    def matrix(self):
        return block_diag(*self.blocks)

    @classmethod
    def identity(cls, profile):
        profile = validate_profile(profile)
        return cls(tuple(np.eye(k, dtype=complex) for k in profile))


def coordinates_distance(a: FlagCoordinates, b: FlagCoordinates) -> float:
    """Largest per-level difference; infinite when profiles or charts differ."""
    if a.profile != b.profile or a.charts != b.charts:
        return math.inf
    if not a.xs:
        return 0.0
    return max(frobenius(xa - xb) for xa, xb in zip(a.xs, b.xs))


def decompose_unitary(
    g,
    profile,
    ordering=ChartOrdering.LEXICOGRAPHIC,
    rank_tol=RANK_TOL,
    psd_tol=PSD_TOL,
    unit_tol=EPS_UNITARY,
):
    """Canonical coset decomposition of a unitary over a profile.

    Peels levels from the outside in: the span of the last k_j columns is
    chart-selected and mapped to its ball coordinate, the corresponding
    section is divided out, and the upper-left block carries on.  Returns
    the flag coordinates and the unique block-diagonal residue; the
    coordinates depend only on the coset of g modulo block-diagonal factors.
    """
    g = require_unitary(g, unit_tol)
    ks = validate_profile(profile, n=g.shape[0])
    cur = g
    xs, charts, residues = [], [], []
    for nj, kj in level_dimensions(ks):
        p = projector_of_unitary(cur, kj)
        sigma = select_chart(p, ordering, rank_tol)
        x = chart_coordinates(p, sigma, rank_tol)
        iota = permutation_unitary(sigma) @ ball_unitary(x, psd_tol)
        res = iota.conj().T @ cur
        xs.append(x)
        charts.append(sigma)
        residues.append(res[nj - kj :, nj - kj :])
        cur = res[: nj - kj, : nj - kj]
    blocks = (cur,) + tuple(reversed(residues))
    return FlagCoordinates(ks, tuple(xs), tuple(charts)), BlockDiagonalUnitary(blocks)


def reconstruct_unitary(coords: FlagCoordinates, h=None, psd_tol=PSD_TOL):
    """Product of the embedded per-level sections times a block-diagonal factor.

    Inverse of :func:`decompose_unitary`: feeding its output back returns the
    original unitary.
    """
    ks = coords.profile
    n = coords.n
    if h is None:
        h = BlockDiagonalUnitary.identity(ks)
    if h.profile != ks:
        raise ValidationError(
            f"block profile {h.profile} does not match coordinates profile {ks}",
            code="PROFILE_SUM",
        )
    g = np.eye(n, dtype=complex)
    for (nj, kj), x, sigma in zip(level_dimensions(ks), coords.xs, coords.charts):
        factor = np.eye(n, dtype=complex)
        factor[:nj, :nj] = permutation_unitary(sigma) @ ball_unitary(x, psd_tol)
        g = g @ factor
    return g @ h.matrix()


def flag_section(coords: FlagCoordinates, psd_tol=PSD_TOL):
    """Canonical unitary over a flag-manifold point (identity residue).

    Decomposing ``flag_section(coords) @ v`` for any block-diagonal v returns
    the same coordinates: the section represents the coset.
    """
    return reconstruct_unitary(coords, None, psd_tol)


def section_from_projective_factors(p, rank_tol=RANK_TOL, psd_tol=PSD_TOL):
    """Section over a k-plane assembled from k rank-one ball factors.

    Only defined on the identity chart.  The plane's section is
    right-normalized so the bottom block is lower triangular with positive
    diagonal, then one projective factor is peeled per column, innermost
    last.  Each peeled vector x_i has exact zeros in its trailing positions
    (all but the first n - k and the peeled ones), which is what makes the
    factors cheap to write down.  Returns the peeled vectors, outermost
    first, and the product of the embedded factors: a unitary whose last k
    columns span the input plane.
    """
    f = frame_of_projector(p)
    n, k = f.shape
    if k == n:
        raise ValidationError("the full plane has no chart coordinate", code="BAD_DIMENSION")
    x0 = chart_coordinates(p, identity_chart(n), rank_tol)  # raises OutOfChartError
    g = ball_unitary(x0, psd_tol)
    u_tri, _ = lower_triangularize(g[n - k :, n - k :], rank_tol)
    cur = g.copy()
    cur[:, n - k :] = cur[:, n - k :] @ u_tri
    vectors, factors = [], []
    for _ in range(k):
        x = cur[:, -1][:-1].copy()
        w = ball_unitary(x, psd_tol)
        vectors.append(x)
        factors.append(w)
        cur = (w.conj().T @ cur)[:-1, :-1]
    section = np.eye(n, dtype=complex)
    for i, w in enumerate(factors):
        embedded = np.eye(n, dtype=complex)
        embedded[: n - i, : n - i] = w
        section = section @ embedded
    return vectors, section


@dataclass(frozen=True, eq=False)
class JarlskogLevel:
    """Angle/direction form of a ball vector: x = sin(theta) * zeta."""

    theta: float
    zeta: np.ndarray

    def __post_init__(self):
        theta = float(self.theta)
        zeta = np.asarray(self.zeta, dtype=complex).reshape(-1)
        if not 0.0 <= theta < math.pi / 2:
            raise ValidationError(f"theta={theta} outside [0, pi/2)", code="THETA_RANGE")
        if zeta.size < 1:
            raise ValidationError("zeta must be nonempty", code="BAD_SHAPE")
        if abs(np.linalg.norm(zeta) - 1.0) > 1e-12:
            raise ValidationError(
                f"zeta norm {np.linalg.norm(zeta):.15f} != 1", code="ZETA_NORM"
            )
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "zeta", zeta)


def jarlskog_to_ball(level: JarlskogLevel):
    """Ball vector sin(theta) * zeta; its norm is sin(theta) < 1."""
    return math.sin(level.theta) * level.zeta


def ball_to_jarlskog(x):
    """Angle/direction form of a ball vector.

    The zero vector maps to theta = 0 with direction e_1 by convention
    (any direction is equivalent there).
    """
    x = np.asarray(x, dtype=complex).reshape(-1)
    nrm = float(np.linalg.norm(x))
    if nrm >= 1.0:
        raise ValidationError(f"vector norm {nrm:.6f} >= 1", code="BALL_NORM")
    if nrm == 0.0:
        zeta = np.zeros(x.size, dtype=complex)
        zeta[0] = 1.0
        return JarlskogLevel(0.0, zeta)
    return JarlskogLevel(math.asin(nrm), x / nrm)


def jarlskog_unitary(theta, zeta):
    """Angle/direction unitary [[I - (1-cos t) z z*, sin t z], [-sin t z*, cos t]].

    Entrywise identical to ``ball_unitary(sin(theta) * zeta)``; kept as an
    independent construction for cross-checks.
    """
    zeta = np.asarray(zeta, dtype=complex).reshape(-1, 1)
    j = zeta.shape[0]
    w = np.empty((j + 1, j + 1), dtype=complex)
    w[:j, :j] = np.eye(j) - (1.0 - math.cos(theta)) * (zeta @ zeta.conj().T)
    w[:j, j:] = math.sin(theta) * zeta
    w[j:, :j] = -math.sin(theta) * zeta.conj().T
    w[j, j] = math.cos(theta)
    return w
