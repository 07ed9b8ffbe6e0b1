"""Command-line front end: JSON in, JSON out.

Subcommands::

    param-to-rho       density parameters -> density matrix
    rho-to-param       density matrix -> density parameters
    decompose-unitary  unitary -> flag coordinates + block-diagonal residue
    sample             seeded random parameters and density matrix
    verify             run the seeded property suites

Exit codes: 0 success, 1 verification failure, 2 validation error,
3 numeric failure, 4 eigenvalue-gap ambiguity.  Validation and numeric
failures emit a machine-readable ``{"error": {"code", "message"}}`` object.
The environment variable ``FLAGPARAM_TOL`` overrides the default input
validation tolerances (unitarity, hermiticity, trace).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import iojson, verify
from .coset import decompose_unitary, reconstruct_unitary
from .density import GAP_TOL, deparametrize, parametrize, require_density
from .errors import (
    FlagparamError,
    GapAmbiguityError,
    NoChartError,
    NotPSDError,
    OutOfChartError,
    SingularInputError,
    ValidationError,
)
from .linalg import (
    EPS_HERMITIAN,
    EPS_UNITARY,
    frobenius,
    require_unitary,
    unitarity_defect,
)
from .sampling import random_density_parameters
from .density import TRACE_TOL

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3
EXIT_AMBIGUITY = 4


def _env_tol(default):
    raw = os.environ.get("FLAGPARAM_TOL")
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(f"FLAGPARAM_TOL={raw!r} is not a number", code="BAD_TOL")


def _read_doc(args):
    if args.infile:
        with open(args.infile, "r", encoding="utf-8") as fp:
            return iojson.load(fp)
    return iojson.loads(sys.stdin.read())


def _write_doc(doc, args):
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fp:
            iojson.dump(doc, fp)
    else:
        sys.stdout.write(iojson.dumps(doc))


def _parse_profile(text, n=None):
    try:
        ks = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValidationError(f"bad profile {text!r}", code="PROFILE_VALUES")
    from .coset import validate_profile

    return validate_profile(ks, n=n)


def cmd_param_to_rho(args):
    params = iojson.params_from_json(_read_doc(args), gap_tol=args.gap_tol)
    _write_doc(iojson.matrix_to_json(parametrize(params)), args)
    return EXIT_OK


def cmd_rho_to_param(args):
    rho = iojson.matrix_from_json(_read_doc(args))
    h = require_density(
        rho, herm_tol=_env_tol(EPS_HERMITIAN), trace_tol=_env_tol(TRACE_TOL)
    )
    # accepted within tolerance: hand the exactly normalized matrix on
    h = h / float(np.trace(h).real)
    gap_tol = args.gap_tol if args.gap_tol is not None else GAP_TOL
    params = deparametrize(h, gap_tol=gap_tol)
    _write_doc(iojson.params_to_json(params), args)
    return EXIT_OK


def cmd_decompose_unitary(args):
    g = iojson.matrix_from_json(_read_doc(args))
    g = require_unitary(g, _env_tol(EPS_UNITARY))
    if unitarity_defect(g) > EPS_UNITARY:
        # accepted under a loosened tolerance: decompose the closest unitary
        w, _, vh = np.linalg.svd(g)
        g = w @ vh
    profile = _parse_profile(args.profile, n=g.shape[0])
    coords, blocks = decompose_unitary(g, profile)
    doc = {
        "profile": list(profile),
        "levels": [
            {"chart": list(sigma), "X": iojson.matrix_to_json(x)}
            for x, sigma in zip(coords.xs, coords.charts)
        ],
        "h_blocks": [iojson.matrix_to_json(b) for b in blocks.blocks],
    }
    if args.reconstruct:
        doc["reconstruction_residual"] = frobenius(reconstruct_unitary(coords, blocks) - g)
    _write_doc(doc, args)
    return EXIT_OK


def cmd_sample(args):
    if args.n < 1:
        raise ValidationError("n must be >= 1", code="BAD_DIMENSION")
    profile = _parse_profile(args.profile, n=args.n) if args.profile else (1,) * args.n
    params = random_density_parameters(profile, np.random.default_rng(args.seed))
    doc = {
        "params": iojson.params_to_json(params),
        "rho": iojson.matrix_to_json(parametrize(params)),
    }
    _write_doc(doc, args)
    return EXIT_OK


def cmd_verify(args):
    report = verify.run(args.suite, seed=args.seed)
    _write_doc(report, args)
    return EXIT_OK if report["pass"] else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(
        prog="flagparam",
        description="Ball-chart parametrization of unitary and density matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--in", dest="infile", metavar="FILE", help="read input from FILE, not stdin")
        p.add_argument("--out", dest="outfile", metavar="FILE", help="write output to FILE, not stdout")

    p = sub.add_parser("param-to-rho", help="density parameters JSON -> density matrix JSON")
    common(p)
    p.add_argument("--gap-tol", type=float, default=None, help="spectrum gap tolerance")
    p.set_defaults(func=cmd_param_to_rho)

    p = sub.add_parser("rho-to-param", help="density matrix JSON -> density parameters JSON")
    common(p)
    p.add_argument("--gap-tol", type=float, default=None, help="eigenvalue clustering tolerance")
    p.set_defaults(func=cmd_rho_to_param)

    p = sub.add_parser("decompose-unitary", help="unitary JSON -> flag coordinates + blocks")
    common(p)
    p.add_argument("--profile", required=True, metavar="K1,K2,...", help="multiplicity profile")
    p.add_argument(
        "--reconstruct", action="store_true", help="also report the reconstruction residual"
    )
    p.set_defaults(func=cmd_decompose_unitary)

    p = sub.add_parser("sample", help="seeded random parameters and density matrix")
    common(p)
    p.add_argument("n", type=int, help="matrix dimension")
    p.add_argument("--profile", metavar="K1,K2,...", help="multiplicity profile (default 1,1,...,1)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run the seeded property suites")
    common(p)
    p.add_argument(
        "--suite",
        default="all",
        choices=sorted(verify.SUITES) + ["all"],
        help="which suite to run",
    )
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)
    return parser


def _emit_error(exc, code, args):
    doc = {"error": {"code": code, "message": str(exc)}}
    try:
        _write_doc(doc, args)
    except OSError:
        sys.stdout.write(iojson.dumps(doc))


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        _emit_error(exc, exc.code, args)
        return EXIT_VALIDATION
    except GapAmbiguityError as exc:
        _emit_error(exc, "GAP_AMBIGUITY", args)
        return EXIT_AMBIGUITY
    except (NotPSDError, SingularInputError, OutOfChartError, NoChartError) as exc:
        _emit_error(exc, type(exc).__name__.replace("Error", "").upper(), args)
        return EXIT_NUMERIC
    except FlagparamError as exc:
        _emit_error(exc, "NUMERIC", args)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
