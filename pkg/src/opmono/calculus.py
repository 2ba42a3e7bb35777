"""Matrix functions by spectral calculus and their Frechet derivatives.

The derivative of A -> f(A) at A = U diag(lam) U^H in direction C is

    U (F * (U^H C U)) U^H,    F[i, j] = f^[1](lam_i, lam_j),

where ``*`` is the entrywise product and f^[1] the first divided difference
(Daleckii-Krein).
"""

import numpy as np

from .errors import DimensionMismatch, SpectrumOutOfDomain
from .hermitian import HermitianMatrix, eigh

CONFLUENT_EPS = 1e-7


def check_spectrum(seed, eigenvalues):
    lo = float(eigenvalues[0])
    if not lo > seed.gamma:
        raise SpectrumOutOfDomain(lo, seed.gamma)


def _hermitian_part(m):
    return HermitianMatrix(0.5 * (m + m.conj().T))


def apply(seed, A):
    """f(A) = U f(Lambda) U^H."""
    d = eigh(A)
    check_spectrum(seed, d.eigenvalues)
    u = d.frame
    fl = np.asarray(seed.f(d.eigenvalues), dtype=float)
    return _hermitian_part((u * fl) @ u.conj().T)


def divided_difference(seed, x, y, eps=CONFLUENT_EPS):
    """(f(x) - f(y)) / (x - y), or f'((x + y) / 2) when x and y nearly coincide."""
    seed.check_domain(x, y)
    if abs(x - y) > eps * max(1.0, abs(x), abs(y)):
        return float((seed.f(x) - seed.f(y)) / (x - y))
    return float(seed.fprime(0.5 * (x + y)))


def loewner_matrix(seed, eigenvalues, eps=CONFLUENT_EPS):
    """Symmetric matrix of first divided differences over a list of eigenvalues."""
    lam = np.asarray(eigenvalues, dtype=float)
    x = lam[:, None]
    y = lam[None, :]
    fx = np.asarray(seed.f(lam), dtype=float)
    diff = x - y
    confluent = np.abs(diff) <= eps * np.maximum(1.0, np.maximum(np.abs(x), np.abs(y)))
    with np.errstate(divide="ignore", invalid="ignore"):
        quotient = (fx[:, None] - fx[None, :]) / diff
    mids = np.asarray(seed.fprime(0.5 * (x + y)), dtype=float)
    F = np.where(confluent, mids, quotient)
    F = 0.5 * (F + F.T)
    # confluent diagonal is f'(lam_i) exactly
    F[np.diag_indices_from(F)] = np.asarray(seed.fprime(lam), dtype=float)
    return F


def frechet(seed, A, C):
    """Directional derivative lim_{t->0} (f(A + tC) - f(A)) / t."""
    if A.n != C.n:
        raise DimensionMismatch(f"dimension mismatch: {A.n} vs {C.n}")
    d = eigh(A)
    check_spectrum(seed, d.eigenvalues)
    u = d.frame
    F = loewner_matrix(seed, d.eigenvalues)
    inner = u.conj().T @ C.entries @ u
    return _hermitian_part(u @ (F * inner) @ u.conj().T)
