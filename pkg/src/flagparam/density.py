"""Density matrices with degenerate spectra and their independent parameters.

A density matrix is determined by a strictly decreasing list of distinct
eigenvalues with multiplicities (the spectrum) and a point of the flag
manifold fixed by those multiplicities (the eigenbasis modulo the
commutant).  ``parametrize`` builds the matrix from the parameters;
``deparametrize`` recovers them by eigenvalue clustering followed by the
coset decomposition of the eigenvector unitary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GapAmbiguityError, ValidationError
from .linalg import EPS_HERMITIAN, PSD_TOL, RANK_TOL, as_square, hermiticity_defect
from .charts import ChartOrdering
from .coset import FlagCoordinates, decompose_unitary, flag_section, validate_profile

GAP_TOL = 1e-6  # default eigenvalue clustering threshold
TRACE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Distinct eigenvalues with multiplicities: strictly decreasing, unit weight.

    ``lambdas[j]`` is repeated ``profile[j]`` times on the diagonal; the
    weighted sum over the profile is 1.  Consecutive values must be separated
    by more than ``gap_tol``.
    """

    profile: tuple
    lambdas: tuple
    gap_tol: float = GAP_TOL

    def __post_init__(self):
        profile = validate_profile(self.profile)
        lambdas = tuple(float(v) for v in self.lambdas)
        if len(lambdas) != len(profile):
            raise ValidationError(
                f"{len(lambdas)} eigenvalues for {len(profile)} blocks", code="LAMBDA_COUNT"
            )
        gaps = [a - b for a, b in zip(lambdas, lambdas[1:])]
        if any(g <= self.gap_tol for g in gaps):
            raise ValidationError(
                f"eigenvalues must decrease by more than gap_tol={self.gap_tol:.1e}: {lambdas}",
                code="LAMBDA_ORDER",
            )
        # tolerate the tiny negative tail produced by clustering a PSD spectrum
        if lambdas[-1] < -PSD_TOL:
            raise ValidationError(f"negative eigenvalue {lambdas[-1]:.3e}", code="LAMBDA_NEGATIVE")
        weight = sum(k * v for k, v in zip(profile, lambdas))
        if abs(weight - 1.0) > TRACE_TOL:
            raise ValidationError(
                f"weighted eigenvalue sum {weight!r} != 1", code="LAMBDA_SUM"
            )
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "lambdas", lambdas)
        object.__setattr__(self, "gap_tol", float(self.gap_tol))

    @property
    def n(self):
        return sum(self.profile)

    def diagonal(self):
        """The eigenvalues repeated per multiplicity, as a vector."""
        return np.repeat(np.array(self.lambdas, dtype=float), np.array(self.profile))


@dataclass(frozen=True, eq=False)
class DensityParameters:
    """Independent parameters of a density matrix: spectrum plus flag point."""

    spectrum: Spectrum
    coords: FlagCoordinates

    def __post_init__(self):
        if self.spectrum.profile != self.coords.profile:
            raise ValidationError(
                f"spectrum profile {self.spectrum.profile} != "
                f"coordinates profile {self.coords.profile}",
                code="PROFILE_SUM",
            )

    @property
    def n(self):
        return self.spectrum.n


def parametrize(params: DensityParameters, psd_tol=PSD_TOL):
    """Density matrix U D U* with U the canonical section over the flag point.

    The result does not depend on which section is used: conjugating U by any
    block-diagonal unitary matching the profile leaves it unchanged, because
    such factors commute with the degenerate diagonal.
    """
    u = flag_section(params.coords, psd_tol)
    rho = (u * params.spectrum.diagonal()) @ u.conj().T
    return (rho + rho.conj().T) / 2


def require_density(rho, herm_tol=EPS_HERMITIAN, psd_tol=PSD_TOL, trace_tol=TRACE_TOL):
    """Validate a density matrix: Hermitian, PSD within tolerance, unit trace."""
    rho = as_square(rho)
    defect = hermiticity_defect(rho)
    if defect > herm_tol:
        raise ValidationError(
            f"not Hermitian: defect {defect:.3e} > {herm_tol:.1e}", code="NOT_HERMITIAN"
        )
    h = (rho + rho.conj().T) / 2
    trace = float(np.trace(h).real)
    if abs(trace - 1.0) > trace_tol:
        raise ValidationError(f"trace {trace!r} != 1", code="BAD_TRACE")
    low = float(np.linalg.eigvalsh(h)[0])
    if low < -psd_tol:
        raise ValidationError(f"negative eigenvalue {low:.3e}", code="NOT_DENSITY_PSD")
    return h


def deparametrize(
    rho,
    gap_tol=GAP_TOL,
    ordering=ChartOrdering.LEXICOGRAPHIC,
    rank_tol=RANK_TOL,
    herm_tol=EPS_HERMITIAN,
    psd_tol=PSD_TOL,
):
    """Recover spectrum and flag coordinates from a density matrix.

    Eigenvalues are sorted in decreasing order and clustered: a gap at or
    below ``gap_tol`` merges, a gap of at least ``10 * gap_tol`` splits, and
    anything in between raises :class:`GapAmbiguityError` because the
    multiplicity profile would be unstable at that tolerance.  The
    eigenvector unitary is then decomposed over the detected profile; its
    block-diagonal residue is commutant freedom and is dropped.
    """
    h = require_density(rho, herm_tol, psd_tol)
    w, v = np.linalg.eigh(h)
    w = w[::-1]
    v = v[:, ::-1]
    gaps = w[:-1] - w[1:]
    ambiguous = (gaps > gap_tol) & (gaps < 10.0 * gap_tol)
    if np.any(ambiguous):
        g = float(gaps[np.argmax(ambiguous)])
        raise GapAmbiguityError(
            f"eigenvalue gap {g:.3e} inside ({gap_tol:.1e}, {10 * gap_tol:.1e}): "
            "clustering is unstable, pick a different gap_tol"
        )
    splits = [i + 1 for i, g in enumerate(gaps) if g > gap_tol]
    groups = np.split(np.arange(w.size), splits)
    profile = tuple(len(g) for g in groups)
    lambdas = tuple(float(np.mean(w[g])) for g in groups)
    spectrum = Spectrum(profile, lambdas, gap_tol)
    coords, _ = decompose_unitary(v, profile, ordering, rank_tol, psd_tol)
    return DensityParameters(spectrum, coords)


def parameter_count(profile) -> int:
    """Number of independent real parameters for a profile.

    m - 1 from the spectrum (simplex interior) plus twice the sum of the
    pairwise multiplicity products from the flag manifold.  For the
    non-degenerate profile (1, ..., 1) on n levels this is n^2 - 1.
    """
    ks = validate_profile(profile)
    m = len(ks)
    cross = sum(ks[i] * ks[j] for i in range(m) for j in range(i + 1, m))
    return (m - 1) + 2 * cross
