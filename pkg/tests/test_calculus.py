import math

import numpy as np
import pytest
import scipy.linalg

from conftest import in_domain
from opmono.calculus import apply, divided_difference, frechet, loewner_matrix
from opmono.errors import DimensionMismatch, DomainError, SpectrumOutOfDomain
from opmono.functions import builtin_seed
from opmono.hermitian import HermitianMatrix, eigh, random_hermitian, random_unitary

EXP = builtin_seed("exp")
SQUARE = builtin_seed("pow", p=2)


def test_apply_examples():
    np.testing.assert_allclose(apply(EXP, HermitianMatrix(np.zeros((3, 3)))).entries, np.eye(3))
    np.testing.assert_allclose(apply(SQUARE, HermitianMatrix.diag([1.0, 2.0])).entries, np.diag([1.0, 4.0]))
    c, s = math.cosh(1.0), math.sinh(1.0)
    out = apply(EXP, HermitianMatrix([[0.0, 1.0], [1.0, 0.0]])).entries
    np.testing.assert_allclose(out, [[c, s], [s, c]], atol=1e-14)


def test_apply_matches_expm():
    for s in range(10):
        A = random_hermitian(6, s)
        np.testing.assert_allclose(apply(EXP, A).entries, scipy.linalg.expm(A.entries), rtol=1e-12, atol=1e-12)


def test_apply_square_is_product():
    for s in range(20):
        A = in_domain(random_hermitian(1 + s % 8, s), SQUARE)
        np.testing.assert_allclose(apply(SQUARE, A).entries, A.entries @ A.entries, atol=1e-10)


def test_apply_spectrum_maps(seed):
    A = in_domain(random_hermitian(5, 3), seed)
    got = eigh(apply(seed, A)).eigenvalues
    np.testing.assert_allclose(got, np.sort(seed.f(eigh(A).eigenvalues)), rtol=1e-12)


def test_apply_out_of_domain():
    with pytest.raises(SpectrumOutOfDomain) as info:
        apply(SQUARE, HermitianMatrix.diag([-1.0, 2.0]))
    assert info.value.eigenvalue == -1.0 and info.value.gamma == 0.0


def test_divided_difference_examples():
    assert divided_difference(EXP, 2.0, 2.0) == math.exp(2.0)
    assert divided_difference(EXP, 0.0, 1.0) == pytest.approx(math.e - 1, rel=1e-15)
    assert divided_difference(SQUARE, 1.0, 3.0) == 4.0
    assert divided_difference(EXP, 1.0, 0.0) == divided_difference(EXP, 0.0, 1.0)
    with pytest.raises(DomainError):
        divided_difference(SQUARE, -1.0, 1.0)


def test_divided_difference_continuous_at_threshold():
    x = 1.3
    for gap in [1e-6, 1e-7, 2e-8]:
        dd = divided_difference(EXP, x, x + gap)
        assert dd == pytest.approx(math.exp(x + gap / 2), rel=1e-8)


def test_loewner_matrix_structure(seed):
    lam = np.array([0.5, 0.5, 1.0, 2.5])
    F = loewner_matrix(seed, lam)
    assert np.array_equal(F, F.T)
    np.testing.assert_array_equal(F.diagonal(), seed.fprime(lam))
    assert F[0, 1] == seed.fprime(0.5)
    assert F[1, 2] == pytest.approx((seed.f(1.0) - seed.f(0.5)) / 0.5, rel=1e-14)


def test_frechet_scalar_base_point(seed):
    c = 1.7
    A = HermitianMatrix.identity(4, c)
    C = random_hermitian(4, 8)
    np.testing.assert_allclose(frechet(seed, A, C).entries, seed.fprime(c) * C.entries, rtol=1e-13)


def test_frechet_two_by_two_model(seed):
    x, y = 0.7, 2.2
    L = frechet(seed, HermitianMatrix.diag([x, y]), HermitianMatrix(np.ones((2, 2)))).entries
    dd = divided_difference(seed, x, y)
    np.testing.assert_allclose(L, [[seed.fprime(x), dd], [dd, seed.fprime(y)]], rtol=1e-14)


def test_frechet_matches_expm_frechet():
    for s in range(10):
        A = random_hermitian(5, 100 + s)
        C = random_hermitian(5, 200 + s)
        ref = scipy.linalg.expm_frechet(A.entries, C.entries, compute_expm=False)
        np.testing.assert_allclose(frechet(EXP, A, C).entries, ref, rtol=1e-10, atol=1e-11)


def test_frechet_finite_difference(seed):
    h = 1e-5
    for s in range(10):
        A = in_domain(random_hermitian(5, s), seed)
        C = random_hermitian(5, 50 + s)
        fd = (apply(seed, A + h * C).entries - apply(seed, A - h * C).entries) / (2 * h)
        got = frechet(seed, A, C).entries
        assert np.linalg.norm(got - fd) <= 1e-6 * np.linalg.norm(fd)


def test_frechet_linear(seed, rng):
    A = in_domain(random_hermitian(4, 1), seed)
    C1, C2 = random_hermitian(4, 2), random_hermitian(4, 3)
    for _ in range(5):
        alpha, beta = rng.normal(size=2)
        lhs = frechet(seed, A, alpha * C1 + beta * C2).entries
        rhs = alpha * frechet(seed, A, C1).entries + beta * frechet(seed, A, C2).entries
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)


def test_frechet_basis_covariant(seed):
    A = in_domain(random_hermitian(4, 4), seed)
    C = random_hermitian(4, 5)
    V = random_unitary(4, 6)
    rot = lambda M: HermitianMatrix(V @ M.entries @ V.conj().T)
    lhs = frechet(seed, rot(A), rot(C)).entries
    rhs = V @ frechet(seed, A, C).entries @ V.conj().T
    np.testing.assert_allclose(lhs, rhs, atol=1e-9)


def test_frechet_errors():
    with pytest.raises(DimensionMismatch):
        frechet(EXP, HermitianMatrix.identity(2), HermitianMatrix.identity(3))
    with pytest.raises(SpectrumOutOfDomain):
        frechet(SQUARE, HermitianMatrix.diag([-1.0, 1.0]), HermitianMatrix.identity(2))
