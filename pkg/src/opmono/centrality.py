"""Centrality of Hermitian matrices through local monotonicity of f.

In the algebra of n x n complex matrices the central elements are the scalar
multiples of the identity. A is treated as central when its spectral width
is at most ``1e-9 * max(1, |lambda_max|)``. Otherwise the two-dimensional
witness for the extreme eigenvalues (x, y) = (lambda_min, lambda_max) is
embedded along the eigenvectors u, v. Since span{u, v} reduces both A and
B = (u + v)(u + v)^H, the margin delta in dimension n equals the 2x2 one.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .calculus import apply, check_spectrum
from .errors import CertificateFailed, NotCommuting, NotOrdered, NumericallyScalar
from .hermitian import HermitianMatrix, eigh, min_eigenvalue
from .witness import Witness2, witness_2x2

CENTRAL_REL_TOL = 1e-9
PSD_TOL = 1e-12
DELTA_MATCH_TOL = 1e-9
COMMUTE_TOL = 1e-10
MONOTONE_TOL = 1e-10


def central_tol(decomp):
    return CENTRAL_REL_TOL * max(1.0, abs(float(decomp.eigenvalues[-1])))


def _vec_to_json(w):
    return [[float(z.real), float(z.imag)] for z in np.asarray(w, dtype=complex)]


def _vec_from_json(rows):
    return np.array([complex(float(re), float(im)) for re, im in rows])


@dataclass(frozen=True, eq=False)
class ViolationCertificate:
    """Evidence that A <= A + t0 B while f(A) is not <= f(A + t0 B)."""

    B: HermitianMatrix
    t0: float
    w: np.ndarray
    delta: float
    neg_eig: float
    x: float
    y: float

    def to_json(self):
        return {
            "B": self.B.to_json(),
            "t0": self.t0,
            "w": _vec_to_json(self.w),
            "delta": self.delta,
            "neg_eig": self.neg_eig,
            "x": self.x,
            "y": self.y,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            B=HermitianMatrix.from_json(obj["B"]),
            t0=float(obj["t0"]),
            w=_vec_from_json(obj["w"]),
            delta=float(obj["delta"]),
            neg_eig=float(obj["neg_eig"]),
            x=float(obj["x"]),
            y=float(obj["y"]),
        )


@dataclass(frozen=True, eq=False)
class CentralityVerdict:
    verdict: str  # "Central" or "NonCentral"
    spectral_width: float
    certificate: Optional[ViolationCertificate] = None
    witness: Optional[Witness2] = field(default=None, repr=False)

    @property
    def central(self):
        return self.verdict == "Central"

    def to_json(self):
        out = {"verdict": self.verdict, "spectral_width": self.spectral_width}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def spectral_pair(decomp, tol=None):
    """Extreme eigenvalues and their eigenvectors: (lambda_min, lambda_max, u, v)."""
    if tol is None:
        tol = central_tol(decomp)
    if decomp.width <= tol:
        raise NumericallyScalar(f"spectral width {decomp.width:.3e} <= {tol:.3e}")
    ev, frame = decomp.eigenvalues, decomp.frame
    return float(ev[0]), float(ev[-1]), frame[:, 0].copy(), frame[:, -1].copy()


def decide(seed, A, tol=None):
    d = eigh(A)
    check_spectrum(seed, d.eigenvalues)
    if tol is None:
        tol = central_tol(d)
    if d.width <= tol:
        return CentralityVerdict("Central", d.width)

    x, y, u, v = spectral_pair(d, tol)
    wit = witness_2x2(seed, x, y)
    s = u + v
    B = HermitianMatrix(np.outer(s, s.conj()))
    w = wit.lam * u + wit.mu * v

    fA = apply(seed, A)
    diff = apply(seed, A + wit.t0 * B) - fA
    delta = -diff.quadratic_form(w)
    neg_eig = min_eigenvalue(diff)
    if not (neg_eig < 0 and delta > 0):
        raise CertificateFailed(
            f"embedded witness did not verify (delta={delta!r}, neg_eig={neg_eig!r})"
        )
    cert = ViolationCertificate(B=B, t0=wit.t0, w=w, delta=delta, neg_eig=neg_eig, x=x, y=y)
    return CentralityVerdict("NonCentral", d.width, cert, wit)


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    reasons: list

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"verified": self.ok, "reasons": self.reasons}


def verify_certificate(seed, A, cert):
    """Re-check a certificate from scratch.

    Accepts when B is PSD (so A <= A + t0 B), f(A + t0 B) - f(A) has a negative
    eigenvalue, and the stored delta matches <(f(A) - f(A + t0 B)) w, w>.
    """
    reasons = []
    try:
        if cert.B.n != A.n or np.asarray(cert.w).shape != (A.n,):
            return CertificateCheck(False, [f"certificate dimension does not match n={A.n}"])
        if not cert.t0 > 0:
            reasons.append(f"t0={cert.t0!r} is not positive")
        b_min = min_eigenvalue(cert.B)
        if b_min < -PSD_TOL:
            reasons.append(f"B is not positive semidefinite (min eigenvalue {b_min!r})")
        fA = apply(seed, A)
        diff = apply(seed, A + cert.t0 * cert.B) - fA
        lo = min_eigenvalue(diff)
        if not lo < 0:
            reasons.append(f"f(A + t0 B) - f(A) is positive semidefinite (min eigenvalue {lo!r})")
        delta = -diff.quadratic_form(cert.w)
        if abs(delta - cert.delta) > DELTA_MATCH_TOL:
            reasons.append(f"recomputed delta {delta!r} differs from stored {cert.delta!r}")
    except Exception as exc:  # any failure to evaluate means the certificate does not check out
        reasons.append(f"evaluation failed: {exc}")
    return CertificateCheck(not reasons, reasons)


def commuting_order_gap(seed, A, B):
    """Smallest eigenvalue of f(B) - f(A) for a commuting pair A <= B."""
    if A.n != B.n:
        raise NotCommuting("matrices have different dimensions")
    comm = np.linalg.norm(A.entries @ B.entries - B.entries @ A.entries)
    if comm > COMMUTE_TOL * A.frobenius() * B.frobenius():
        raise NotCommuting(f"||AB - BA||_F = {comm:.3e}")
    if min_eigenvalue(B - A) < -MONOTONE_TOL:
        raise NotOrdered("B - A is not positive semidefinite")
    return min_eigenvalue(apply(seed, B) - apply(seed, A))


def monotone_commuting_check(seed, A, B):
    """For commuting A <= B, confirm f(A) <= f(B) up to 1e-10."""
    return commuting_order_gap(seed, A, B) >= -MONOTONE_TOL
