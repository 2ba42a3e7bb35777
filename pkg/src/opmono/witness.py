"""Two-dimensional non-monotonicity witnesses.

For x != y put A = diag(x, y) and B = the all-ones 2x2 matrix (the projection
onto u + v, scaled by 2). The derivative of f at A in direction B is the
matrix L = [[f'(x), D], [D, f'(y)]] with D the divided difference of f at
(x, y). For admissible f its determinant is negative, so L has a unit
eigenvector w with <L w, w> < 0 and a small enough step t gives

    delta = <f(A) w, w> - <f(A + t B) w, w> > 0

even though A <= A + t B.
"""

import math
from dataclasses import dataclass

import numpy as np

from .calculus import apply, divided_difference
from .errors import DegeneratePair, NoNegativeDirection, WitnessSearchFailed
from .hermitian import HermitianMatrix

NEGATIVE_EIG_TOL = 1e-14
DESCENT_LEVELS = 61
REFINE_POINTS = 33


@dataclass(frozen=True)
class Witness2:
    x: float
    y: float
    lam: complex
    mu: complex
    t0: float
    delta: float
    L_det: float

    @property
    def w(self):
        return np.array([self.lam, self.mu], dtype=complex)

    def to_json(self):
        return {
            "x": self.x,
            "y": self.y,
            "lambda": [self.lam.real, self.lam.imag],
            "mu": [self.mu.real, self.mu.imag],
            "t0": self.t0,
            "delta": self.delta,
            "L_det": self.L_det,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            x=float(obj["x"]),
            y=float(obj["y"]),
            lam=complex(*obj["lambda"]),
            mu=complex(*obj["mu"]),
            t0=float(obj["t0"]),
            delta=float(obj["delta"]),
            L_det=float(obj["L_det"]),
        )


def build_L(seed, x, y):
    if x == y:
        raise DegeneratePair(f"x and y must differ (got {x!r} twice)")
    seed.check_domain(x, y)
    dd = divided_difference(seed, x, y)
    return np.array([[float(seed.fprime(x)), dd], [dd, float(seed.fprime(y))]])


def negative_direction(L):
    """Unit eigenvector for the smallest eigenvalue of a real symmetric 2x2 matrix.

    The larger-magnitude component is made real and positive (first one on ties).
    """
    L = np.asarray(L, dtype=float)
    a, b, c = L[0, 0], 0.5 * (L[0, 1] + L[1, 0]), L[1, 1]
    eig = 0.5 * (a + c) - math.hypot(0.5 * (a - c), b)
    if eig >= -NEGATIVE_EIG_TOL:
        raise NoNegativeDirection(f"smallest eigenvalue {eig!r} is not negative")
    if b == 0.0:
        vec = np.array([1.0, 0.0]) if a <= c else np.array([0.0, 1.0])
    else:
        v1 = np.array([b, eig - a])
        v2 = np.array([eig - c, b])
        vec = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
        vec = vec / np.linalg.norm(vec)
    k = 0 if abs(vec[0]) >= abs(vec[1]) else 1
    if vec[k] < 0:
        vec = -vec
    return complex(vec[0]), complex(vec[1]), float(eig)


def _model(x, y):
    return HermitianMatrix.diag([x, y]), HermitianMatrix(np.ones((2, 2)))


def witness_delta(seed, x, y, lam, mu, t):
    """<f(A) w, w> - <f(A + t B) w, w> in the 2x2 model with w = (lam, mu)."""
    A, B = _model(x, y)
    w = np.array([lam, mu], dtype=complex)
    return apply(seed, A).quadratic_form(w) - apply(seed, A + t * B).quadratic_form(w)


def find_t0(seed, x, y, lam, mu):
    """Step t0 > 0 with positive margin delta, found by geometric descent then refinement."""
    A, B = _model(x, y)
    w = np.array([lam, mu], dtype=complex)
    base = apply(seed, A).quadratic_form(w)

    def delta(t):
        return base - apply(seed, A + t * B).quadratic_form(w)

    t_init = max(abs(x - y), 1.0)
    for k in range(DESCENT_LEVELS):
        t0 = t_init * 2.0 ** -k
        d0 = delta(t0)
        if d0 > 0:
            break
    else:
        raise WitnessSearchFailed(
            f"no step in [{t_init:.3g} * 2^-60, {t_init:.3g}] gives a positive margin"
        )

    best_t, best_d = t0, d0
    for t in np.geomspace(0.5 * t0, 2.0 * t0, REFINE_POINTS):
        d = delta(float(t))
        if d > best_d:
            best_t, best_d = float(t), d
    return best_t, best_d


def witness_2x2(seed, x, y):
    L = build_L(seed, x, y)
    lam, mu, _ = negative_direction(L)
    t0, delta = find_t0(seed, x, y, lam, mu)
    return Witness2(
        x=float(x),
        y=float(y),
        lam=lam,
        mu=mu,
        t0=t0,
        delta=delta,
        L_det=float(L[0, 0] * L[1, 1] - L[0, 1] * L[1, 0]),
    )
