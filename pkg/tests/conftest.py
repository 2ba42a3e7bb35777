import math

import numpy as np
import pytest

from opmono.functions import builtin_seed
from opmono.hermitian import HermitianMatrix, min_eigenvalue, random_hermitian

SEED_SPECS = [("exp", {}), ("pow", {"p": 1.5}), ("pow", {"p": 2.0}), ("pow", {"p": 3.0})]


def all_seeds():
    return [builtin_seed(name, **params) for name, params in SEED_SPECS]


def seed_id(seed):
    return seed.spec()


def in_domain(A, seed, margin=0.5):
    """Shift A so its spectrum starts at gamma + margin (no-op for gamma = -inf)."""
    if math.isfinite(seed.gamma):
        return A + HermitianMatrix.identity(A.n, seed.gamma + margin - min_eigenvalue(A))
    return A


@pytest.fixture(params=all_seeds(), ids=seed_id)
def seed(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# acceptance bookkeeping: one line per criterion in the terminal summary
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {name}: {detail}")
