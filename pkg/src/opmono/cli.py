"""Command line interface.

JSON goes to stdout, diagnostics to stderr. Exit codes: 0 success (Central,
verified, conditions hold), 1 negative outcome (NonCentral for ``decide``,
rejected certificate, failed conditions), 2 usage or input error, 3
numerical failure.
"""

import argparse
import csv
import json
import math
import os
import statistics
import sys
from dataclasses import dataclass, field

import numpy as np

from .centrality import ViolationCertificate, decide, verify_certificate
from .errors import (
    AdmissibilityViolation,
    CertificateFailed,
    DegeneratePair,
    DomainError,
    EigenNotConverged,
    NoNegativeDirection,
    NotHermitian,
    OpmonoError,
    WitnessSearchFailed,
)
from .functions import default_grid, parse_fnspec, verify_conditions
from .hermitian import HermitianMatrix, load_matrix, min_eigenvalue, random_hermitian
from .witness import witness_2x2

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

CSV_HEADER = ["seed", "n", "width", "delta", "t0", "neg_eig", "verified"]

NUMERICAL_ERRORS = (
    EigenNotConverged,
    NoNegativeDirection,
    WitnessSearchFailed,
    CertificateFailed,
)


class UsageError(Exception):
    pass


def max_n():
    raw = os.environ.get("OPMONO_MAX_N", "256")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"OPMONO_MAX_N must be an integer, got {raw!r}") from None


def _check_n(n):
    cap = max_n()
    if n > cap:
        raise UsageError(f"dimension {n} exceeds OPMONO_MAX_N={cap}")


@dataclass
class BatchRecord:
    seed: int
    n: int
    width: float
    delta: float = None
    t0: float = None
    neg_eig: float = None
    verified: bool = False


@dataclass
class BatchReport:
    fnspec: str
    n: int
    base_seed: int
    records: list = field(default_factory=list)

    def aggregates(self):
        deltas = [r.delta for r in self.records if r.delta is not None]
        count = len(self.records)
        return {
            "count": count,
            "verified_fraction": (sum(r.verified for r in self.records) / count) if count else None,
            "min_delta": min(deltas) if deltas else None,
            "median_delta": statistics.median(deltas) if deltas else None,
        }

    def to_json(self):
        return {
            "fn": self.fnspec,
            "n": self.n,
            "seed": self.base_seed,
            "records": [vars(r) for r in self.records],
            "aggregates": self.aggregates(),
        }


def batch_instance(seed, n, instance_seed):
    """Random Hermitian matrix, shifted so its spectrum starts at gamma + 0.5 when gamma is finite."""
    A = random_hermitian(n, instance_seed)
    if math.isfinite(seed.gamma):
        A = A + HermitianMatrix.identity(n, seed.gamma + 0.5 - min_eigenvalue(A))
    return A


def run_batch(seed, n, count, base_seed):
    report = BatchReport(seed.spec(), n, base_seed)
    for i in range(count):
        s = base_seed + i
        A = batch_instance(seed, n, s)
        verdict = decide(seed, A)
        rec = BatchRecord(seed=s, n=n, width=verdict.spectral_width)
        if verdict.certificate is not None:
            cert = verdict.certificate
            rec.delta, rec.t0, rec.neg_eig = cert.delta, cert.t0, cert.neg_eig
            rec.verified = bool(verify_certificate(seed, A, cert))
        report.records.append(rec)
    return report


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_csv(report, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in report.records:
            writer.writerow([_csv_cell(getattr(r, k)) for k in CSV_HEADER])


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _dump(obj, out):
    out.write(json.dumps(obj, indent=2, default=_json_default))
    out.write("\n")


def _read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _load_matrix(path):
    A = load_matrix(path)
    _check_n(A.n)
    return A


def cmd_check_fn(args, out):
    seed = parse_fnspec(args.fnspec)
    grid = default_grid(seed, args.grid_lo, args.grid_hi, args.grid_n)
    report = verify_conditions(seed, grid)
    _dump(report.to_json(), out)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_witness(args, out):
    seed = parse_fnspec(args.fnspec)
    _dump(witness_2x2(seed, args.x, args.y).to_json(), out)
    return EXIT_OK


def cmd_decide(args, out):
    seed = parse_fnspec(args.fnspec)
    verdict = decide(seed, _load_matrix(args.matrix))
    _dump(verdict.to_json(), out)
    return EXIT_OK if verdict.central else EXIT_NEGATIVE


def cmd_verify(args, out):
    seed = parse_fnspec(args.fnspec)
    A = _load_matrix(args.matrix)
    obj = _read_json(args.cert)
    if "certificate" in obj:
        obj = obj["certificate"]
    try:
        cert = ViolationCertificate.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed certificate: {exc}") from exc
    check = verify_certificate(seed, A, cert)
    _dump(check.to_json(), out)
    return EXIT_OK if check.ok else EXIT_NEGATIVE


def cmd_batch(args, out):
    seed = parse_fnspec(args.fnspec)
    if args.n < 1 or args.count < 0:
        raise UsageError("--n must be >= 1 and --count >= 0")
    _check_n(args.n)
    report = run_batch(seed, args.n, args.count, args.seed)
    if args.csv:
        emit_csv(report, args.csv)
    _dump(report.to_json(), out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="opmono",
        description="Centrality of Hermitian matrices via local monotonicity of matrix functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-fn", help="check admissibility conditions of f on a grid")
    p.add_argument("fnspec", help='"exp" or "pow:p=<real>"')
    p.add_argument("--grid-lo", type=float, default=None)
    p.add_argument("--grid-hi", type=float, default=None)
    p.add_argument("--grid-n", type=int, default=64)
    p.set_defaults(func=cmd_check_fn)

    p = sub.add_parser("witness", help="2x2 witness for a pair x != y")
    p.add_argument("fnspec")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("decide", help="decide centrality of a matrix, with a certificate if not central")
    p.add_argument("fnspec")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("verify", help="independently re-check a violation certificate")
    p.add_argument("fnspec")
    p.add_argument("--matrix", required=True)
    p.add_argument("--cert", required=True, help="certificate or decide output; '-' for stdin")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="decide and verify random non-scalar instances")
    p.add_argument("fnspec")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_batch)
    return parser


def run(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except NUMERICAL_ERRORS as exc:
        print(f"opmono: numerical failure: {exc}", file=err)
        return EXIT_NUMERICAL
    except (
        UsageError,
        AdmissibilityViolation,
        DomainError,
        DegeneratePair,
        NotHermitian,
        OpmonoError,
        ValueError,
        KeyError,
    ) as exc:
        print(f"opmono: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        if args.command == "batch" and args.csv and exc.filename == args.csv:
            print(f"opmono: cannot write {args.csv}: {exc.strerror}", file=err)
            return EXIT_NUMERICAL
        print(f"opmono: {exc}", file=err)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
