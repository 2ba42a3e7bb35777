"""Scalar functions f on (gamma, inf) and checks of the admissibility conditions.

A seed is admissible when its derivative is positive, strictly increasing and
logarithmically concave. The checks here are necessarily performed on a finite
grid; passing them is evidence, not proof, that the seed is admissible.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import simpson
from scipy.special import erfi

from .errors import AdmissibilityViolation, DegeneratePair, DomainError

LOG_CONCAVITY_TOL = 1e-12
CHAIN_TOL = 1e-10
STRICT_MARGIN = 1e-12
DEFAULT_QUAD_POINTS = 256
DEFAULT_GRID_N = 64


@dataclass(frozen=True)
class FunctionSeed:
    """A function f together with its derivative on the interval (gamma, inf).

    ``f`` and ``fprime`` must accept numpy arrays elementwise and be pure.
    """

    name: str
    f: Callable = field(repr=False)
    fprime: Callable = field(repr=False)
    gamma: float = -math.inf
    params: dict = field(default_factory=dict)

    def spec(self):
        if not self.params:
            return self.name
        args = ",".join(f"{k}={v!r}" for k, v in sorted(self.params.items()))
        return f"{self.name}:{args}"

    def check_domain(self, *points):
        for x in points:
            if not x > self.gamma:
                raise DomainError(f"point {x!r} is outside ({self.gamma!r}, inf)")


def power_seed(p):
    p = float(p)
    if not p > 1.0:
        raise AdmissibilityViolation(
            f"pow requires p > 1; for p={p!r} the derivative is not strictly increasing"
        )
    return FunctionSeed(
        name="pow",
        f=lambda x: np.power(x, p),
        fprime=lambda x: p * np.power(x, p - 1.0),
        gamma=0.0,
        params={"p": p},
    )


def exp_seed():
    return FunctionSeed(name="exp", f=np.exp, fprime=np.exp)


def gaussian_integral_seed():
    """f(x) = int_0^x exp(s^2) ds, whose derivative exp(x^2) is log-convex.

    Used as a negative control: positivity holds, log-concavity does not.
    """
    return FunctionSeed(
        name="expsq",
        f=lambda x: 0.5 * math.sqrt(math.pi) * erfi(x),
        fprime=lambda x: np.exp(np.square(x)),
    )


_BUILTINS = {"pow": power_seed, "exp": exp_seed}


def builtin_seed(name, **params):
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown function {name!r}; choose from {sorted(_BUILTINS)}") from None
    if name == "pow" and "p" not in params:
        raise ValueError("pow needs the exponent p")
    try:
        return factory(**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name!r}: {params}") from exc


def parse_fnspec(text):
    """Parse ``"exp"`` or ``"pow:p=2.5"`` into a builtin seed."""
    name, _, rest = text.strip().partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq or not key.strip():
                raise ValueError(f"malformed parameter {item!r} in {text!r}")
            try:
                params[key.strip()] = float(value)
            except ValueError:
                raise ValueError(f"parameter {key.strip()!r} is not a real number: {value!r}") from None
    return builtin_seed(name, **params)


@dataclass
class ConditionReport:
    positivity_ok: bool
    strict_increase_ok: bool
    log_concavity_ok: bool
    worst_margin: dict
    failing_points: list

    @property
    def ok(self):
        return self.positivity_ok and self.strict_increase_ok and self.log_concavity_ok

    def to_json(self):
        return {
            "ok": self.ok,
            "positivity_ok": self.positivity_ok,
            "strict_increase_ok": self.strict_increase_ok,
            "log_concavity_ok": self.log_concavity_ok,
            "worst_margin": self.worst_margin,
            "failing_points": self.failing_points,
        }


def default_grid(seed, lo=None, hi=None, n=DEFAULT_GRID_N):
    if lo is None:
        lo = max(seed.gamma + 0.01, -10.0)
    if hi is None:
        hi = 10.0
    return np.linspace(lo, hi, n)


def verify_conditions(seed, grid):
    """Check positivity, strict increase and midpoint log-concavity of f' on a grid.

    Log-concavity is tested as
    ``log f'((x+y)/2) >= (log f'(x) + log f'(y)) / 2 - 1e-12`` over all grid
    pairs x < y.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise ValueError("grid needs at least 3 points")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly ascending")
    seed.check_domain(float(grid[0]))

    d = np.asarray(seed.fprime(grid), dtype=float)
    failing = []

    pos_margin = float(np.min(d))
    for x in grid[d <= 0]:
        failing.append({"condition": "positivity", "points": [float(x)]})

    steps = np.diff(d)
    inc_margin = float(np.min(steps))
    for k in np.flatnonzero(steps <= 0):
        failing.append({"condition": "strict_increase", "points": [float(grid[k]), float(grid[k + 1])]})

    i, j = np.triu_indices(grid.size, k=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_d = np.log(d)
        log_mid = np.log(np.asarray(seed.fprime(0.5 * (grid[i] + grid[j])), dtype=float))
    gap = log_mid - 0.5 * (log_d[i] + log_d[j])
    gap = np.where(np.isnan(gap), -np.inf, gap)
    lc_margin = float(np.min(gap))
    for k in np.flatnonzero(gap < -LOG_CONCAVITY_TOL):
        failing.append(
            {"condition": "log_concavity", "points": [float(grid[i[k]]), float(grid[j[k]])]}
        )

    return ConditionReport(
        positivity_ok=pos_margin > 0,
        strict_increase_ok=inc_margin > 0,
        log_concavity_ok=lc_margin >= -LOG_CONCAVITY_TOL,
        worst_margin={
            "positivity": pos_margin,
            "strict_increase": inc_margin,
            "log_concavity": lc_margin,
        },
        failing_points=failing,
    )


@dataclass(frozen=True)
class ChainCheck:
    lhs: float
    mid: float
    rhs: float
    ok: bool


def chain_inequality_check(seed, x, y, quad_points=DEFAULT_QUAD_POINTS, tol=CHAIN_TOL):
    """Evaluate the chain behind f'(x) f'(y) < ((f(x) - f(y)) / (x - y))^2.

    lhs = (log f'(x) + log f'(y)) / 2
    mid = int_0^1 log f'(tx + (1-t)y) dt
    rhs = log int_0^1 f'(tx + (1-t)y) dt

    lhs <= mid follows from log-concavity of f', mid < rhs from Jensen's
    inequality for the strictly concave logarithm.
    """
    if x == y:
        raise DegeneratePair("chain inequality needs x != y")
    if quad_points < 16:
        raise ValueError("quad_points must be >= 16")
    seed.check_domain(x, y)
    if quad_points % 2:
        quad_points += 1
    t = np.linspace(0.0, 1.0, quad_points + 1)
    d = np.asarray(seed.fprime(t * x + (1.0 - t) * y), dtype=float)
    lhs = 0.5 * (math.log(seed.fprime(x)) + math.log(seed.fprime(y)))
    mid = float(simpson(np.log(d), x=t))
    rhs = math.log(float(simpson(d, x=t)))
    ok = lhs <= mid + tol and rhs - mid > STRICT_MARGIN
    return ChainCheck(lhs, mid, rhs, ok)
