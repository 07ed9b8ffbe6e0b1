"""JSON wire formats for complex matrices and density parameters.

Complex matrices travel as separate real/imaginary 2-D arrays in row-major
order; permutations as 1-based image arrays.  Floats are emitted with
Python's shortest round-trip repr, so serialize-then-parse is bit-exact.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ValidationError
from .coset import FlagCoordinates, validate_profile
from .density import DensityParameters, Spectrum


def matrix_to_json(a) -> dict:
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "re": a.real.tolist(),
        "im": a.imag.tolist(),
    }


def matrix_from_json(doc) -> np.ndarray:
    if not isinstance(doc, dict):
        raise ValidationError("matrix document must be an object", code="BAD_JSON")
    try:
        rows, cols = int(doc["rows"]), int(doc["cols"])
        re = np.asarray(doc["re"], dtype=float)
        im = np.asarray(doc["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matrix document: {exc}", code="BAD_JSON")
    if rows < 1 or cols < 1:
        raise ValidationError("rows and cols must be >= 1", code="BAD_SHAPE")
    if re.shape != (rows, cols) or im.shape != (rows, cols):
        raise ValidationError(
            f"re/im shapes {re.shape}/{im.shape} do not match {rows}x{cols}",
            code="BAD_SHAPE",
        )
    m = re + 1j * im
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix entries must be finite", code="NOT_FINITE")
    return m


def params_to_json(params: DensityParameters) -> dict:
    levels = [
        {"chart": list(sigma), "X": matrix_to_json(x)}
        for x, sigma in zip(params.coords.xs, params.coords.charts)
    ]
    return {
        "profile": list(params.spectrum.profile),
        "lambdas": list(params.spectrum.lambdas),
        "levels": levels,
    }


def params_from_json(doc, gap_tol=None) -> DensityParameters:
    if not isinstance(doc, dict):
        raise ValidationError("parameter document must be an object", code="BAD_JSON")
    for key in ("profile", "lambdas", "levels"):
        if key not in doc:
            raise ValidationError(f"missing key {key!r}", code="BAD_JSON")
    profile = validate_profile(doc["profile"])
    levels = doc["levels"]
    if not isinstance(levels, list):
        raise ValidationError("levels must be an array", code="BAD_JSON")
    xs, charts = [], []
    for entry in levels:
        if not isinstance(entry, dict) or "chart" not in entry or "X" not in entry:
            raise ValidationError("each level needs 'chart' and 'X'", code="BAD_JSON")
        charts.append(tuple(int(s) for s in entry["chart"]))
        xs.append(matrix_from_json(entry["X"]))
    if charts and len(charts[0]) != sum(profile):
        raise ValidationError(
            f"profile {profile} sums to {sum(profile)} but the outermost level "
            f"has dimension {len(charts[0])}",
            code="PROFILE_SUM",
        )
    coords = FlagCoordinates(profile, tuple(xs), tuple(charts))
    kwargs = {} if gap_tol is None else {"gap_tol": gap_tol}
    spectrum = Spectrum(profile, tuple(float(v) for v in doc["lambdas"]), **kwargs)
    return DensityParameters(spectrum, coords)


def dump(doc, fp) -> None:
    json.dump(doc, fp, indent=2, sort_keys=True)
    fp.write("\n")


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load(fp):
    try:
        return json.load(fp)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}", code="BAD_JSON")


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}", code="BAD_JSON")
