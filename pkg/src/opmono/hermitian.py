"""Hermitian matrices, a complex Jacobi eigensolver and the Loewner order tests."""

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, EigenNotConverged, NotHermitian

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 30


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """An n x n complex self-adjoint matrix.

    The input is checked against its conjugate transpose (relative tolerance
    ``1e-12 * max|entry|``) and then replaced by ``(A + A^H) / 2`` so the
    stored entries are exactly Hermitian with a real diagonal.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
        scale = np.max(np.abs(a))
        asym = np.max(np.abs(a - a.conj().T))
        if asym > HERMITIAN_TOL * scale:
            raise NotHermitian(f"matrix is not Hermitian (asymmetry {asym:.3e}, scale {scale:.3e})")
        a = 0.5 * (a + a.conj().T)
        a[np.diag_indices_from(a)] = a.diagonal().real
        object.__setattr__(self, "entries", _frozen(a))

    @property
    def n(self):
        return self.entries.shape[0]

    @classmethod
    def identity(cls, n, scale=1.0):
        return cls(scale * np.eye(n))

    @classmethod
    def diag(cls, values):
        return cls(np.diag(np.asarray(values, dtype=float)))

    def __add__(self, other):
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        _check_same_dim(self, other)
        return HermitianMatrix(self.entries + other.entries)

    def __sub__(self, other):
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        _check_same_dim(self, other)
        return HermitianMatrix(self.entries - other.entries)

    def __neg__(self):
        return HermitianMatrix(-self.entries)

    def __mul__(self, c):
        c = float(c)
        return HermitianMatrix(c * self.entries)

    __rmul__ = __mul__

    def __repr__(self):
        return f"HermitianMatrix(n={self.n}, entries={self.entries.tolist()!r})"

    def frobenius(self):
        return float(np.linalg.norm(self.entries))

    def quadratic_form(self, w):
        """Return the real number <A w, w> = w^H A w."""
        w = np.asarray(w, dtype=complex)
        return float(np.real(np.vdot(w, self.entries @ w)))

    def to_json(self):
        return {
            "n": self.n,
            "entries": [[[z.real, z.imag] for z in row] for row in self.entries.tolist()],
        }

    @classmethod
    def from_json(cls, obj):
        n = obj["n"]
        rows = obj["entries"]
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"'n' must be a positive integer, got {n!r}")
        if len(rows) != n or any(len(row) != n for row in rows):
            raise DimensionMismatch(f"entries must be {n}x{n} row-major")
        a = np.empty((n, n), dtype=complex)
        for i, row in enumerate(rows):
            for j, pair in enumerate(row):
                re, im = pair
                a[i, j] = complex(float(re), float(im))
        return cls(a)


def _check_same_dim(a, b):
    if a.n != b.n:
        raise DimensionMismatch(f"dimension mismatch: {a.n} vs {b.n}")


def load_matrix(path):
    with open(path) as fh:
        return HermitianMatrix.from_json(json.load(fh))


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    eigenvalues: np.ndarray  # ascending
    frame: np.ndarray  # columns are eigenvectors

    def reconstruct(self):
        u = self.frame
        return (u * self.eigenvalues) @ u.conj().T

    @property
    def width(self):
        return float(self.eigenvalues[-1] - self.eigenvalues[0])


def _off_norm(a):
    return float(np.linalg.norm(a[~np.eye(a.shape[0], dtype=bool)]))


def _jacobi_2x2(e):
    """A single complex Jacobi rotation diagonalizes a 2x2 Hermitian matrix."""
    app = e[0, 0].real
    aqq = e[1, 1].real
    apq = complex(e[0, 1])
    r = abs(apq)
    if r == 0.0:
        c, s, ph = 1.0, 0.0, 1.0
        lo, hi = app, aqq
    else:
        theta = (aqq - app) / (2.0 * r)
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
        c = 1.0 / math.sqrt(t * t + 1.0)
        s = t * c
        ph = apq.conjugate() / r
        lo, hi = app - t * r, aqq + t * r
    frame = np.array([[c, s], [-s * ph, c * ph]], dtype=complex)
    if hi < lo:
        lo, hi = hi, lo
        frame = frame[:, ::-1].copy()
    eigenvalues = np.array([lo, hi])
    eigenvalues.setflags(write=False)
    frame.setflags(write=False)
    return SpectralDecomposition(eigenvalues, frame)


@lru_cache(maxsize=None)
def _round_robin(n):
    """Rounds of disjoint (p, q) pairs, p < q, covering every pair exactly once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def eigh(A, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Each (p, q) step removes the phase of ``a[p, q]`` with a diagonal unitary
    and then applies a real plane rotation, so the combined 2x2 transform is
    unitary. A sweep visits every pair once in round-robin order, rotating
    the disjoint pairs of a round together. Sweeps stop once the off-diagonal
    Frobenius norm drops to ``tol * ||A||_F``.
    """
    n = A.n
    if n == 2:
        return _jacobi_2x2(A.entries)
    # rows [0, n) hold the working matrix, rows [n, 2n) the accumulated frame
    m = np.vstack([A.entries, np.eye(n)]).astype(complex)
    a = m[:n]
    target = tol * np.linalg.norm(a)
    rounds = _round_robin(n)

    sweeps = 0
    off = _off_norm(a)
    while off > target:
        if sweeps == max_sweeps:
            raise EigenNotConverged(off, sweeps)
        sweeps += 1
        for P, Q in rounds:
            apq = a[P, Q]
            r = np.abs(apq)
            if not r.any():
                continue
            dead = r == 0.0
            diag = a.diagonal().real
            d = diag[Q] - diag[P]
            # t = tan of the rotation angle, smaller root; t = 0 where a[p, q] = 0
            t = np.copysign(2.0 * r, d) / (np.abs(d) + np.hypot(d, 2.0 * r) + dead)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            ph = (apq.conj() + dead) / (r + dead)
            # J = diag(1, ph) @ [[c, s], [-s, c]] = [[c, s], [-s ph, c ph]]
            j10 = -s * ph
            j11 = c * ph
            cp = m[:, P]
            cq = m[:, Q]
            m[:, P] = cp * c + cq * j10
            m[:, Q] = cp * s + cq * j11
            rp = a[P, :]
            rq = a[Q, :]
            a[P, :] = c[:, None] * rp + j10.conj()[:, None] * rq
            a[Q, :] = s[:, None] * rp + j11.conj()[:, None] * rq
            a[P, Q] = 0.0
            a[Q, P] = 0.0
        a[np.diag_indices(n)] = a.diagonal().real
        off = _off_norm(a)

    v = m[n:]
    w = a.diagonal().real
    order = np.argsort(w, kind="stable")
    eigenvalues = w[order]
    frame = v[:, order]
    eigenvalues.setflags(write=False)
    frame.setflags(write=False)
    return SpectralDecomposition(eigenvalues, frame)


def min_eigenvalue(A):
    return float(eigh(A).eigenvalues[0])


def is_psd(A, tol=0.0):
    return min_eigenvalue(A) >= -tol


def loewner_leq(A, B, tol=0.0):
    """A <= B in the semidefinite order, i.e. B - A is positive semidefinite."""
    return is_psd(B - A, tol)


def random_hermitian(n, seed, spread=1.0):
    """GUE-style sample (G + G^H) / 2 with Gaussian real and imaginary parts."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    g = spread * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return HermitianMatrix(0.5 * (g + g.conj().T))


def random_unitary(n, seed):
    """Haar-ish unitary from the QR factorization of a complex Gaussian matrix."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = r.diagonal()
    return q * (d / np.abs(d))
