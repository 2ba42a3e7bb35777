import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opmono.errors import DimensionMismatch, EigenNotConverged, NotHermitian
from opmono.hermitian import (
    HermitianMatrix,
    eigh,
    loewner_leq,
    min_eigenvalue,
    random_hermitian,
)


def test_construction_symmetrizes_small_asymmetry():
    a = np.array([[1.0, 2.0 + 1e-14j], [2.0, 3.0 + 1e-15j]])
    A = HermitianMatrix(a)
    assert np.array_equal(A.entries, A.entries.conj().T)
    assert np.all(A.entries.diagonal().imag == 0)


def test_construction_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        HermitianMatrix([[1.0, 2.0], [3.0, 1.0]])
    with pytest.raises(DimensionMismatch):
        HermitianMatrix(np.ones((2, 3)))


def test_entries_are_read_only():
    A = HermitianMatrix.diag([1.0, 2.0])
    with pytest.raises(ValueError):
        A.entries[0, 0] = 5.0


def test_eigh_identity():
    d = eigh(HermitianMatrix.identity(2))
    np.testing.assert_array_equal(d.eigenvalues, [1.0, 1.0])
    np.testing.assert_allclose(d.frame.conj().T @ d.frame, np.eye(2), atol=1e-15)


def test_eigh_diagonal_is_sorted_permutation():
    d = eigh(HermitianMatrix.diag([3.0, 1.0]))
    np.testing.assert_array_equal(d.eigenvalues, [1.0, 3.0])
    np.testing.assert_allclose(np.abs(d.frame), [[0, 1], [1, 0]])


def test_eigh_swap_matrix():
    d = eigh(HermitianMatrix([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(d.eigenvalues, [-1.0, 1.0], atol=1e-15)
    # eigenvectors (1, -1)/sqrt2 and (1, 1)/sqrt2 up to phase
    expected = np.array([[1.0, 1.0], [-1.0, 1.0]]) / math.sqrt(2)
    for k in range(2):
        overlap = abs(np.vdot(expected[:, k], d.frame[:, k]))
        assert overlap == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8])
def test_eigh_invariants_random(n):
    for s in range(25):
        A = random_hermitian(n, 1000 * n + s, spread=1.0 + s / 5)
        d = eigh(A)
        scale = max(1.0, A.frobenius())
        assert np.linalg.norm(d.reconstruct() - A.entries) <= 1e-10 * scale
        assert np.linalg.norm(d.frame.conj().T @ d.frame - np.eye(n)) <= 1e-10
        assert np.all(np.diff(d.eigenvalues) >= 0)
        # independent LAPACK oracle
        np.testing.assert_allclose(d.eigenvalues, np.linalg.eigvalsh(A.entries), atol=1e-12 * scale)


def test_eigh_larger_matrix():
    A = random_hermitian(40, 5)
    d = eigh(A)
    assert np.linalg.norm(d.reconstruct() - A.entries) <= 1e-10 * A.frobenius()


def test_eigh_complex_phases():
    A = HermitianMatrix([[1.0, 2j, 0.5 - 1j], [-2j, 0.0, 1 + 1j], [0.5 + 1j, 1 - 1j, -2.0]])
    d = eigh(A)
    np.testing.assert_allclose(d.eigenvalues, np.linalg.eigvalsh(A.entries), atol=1e-13)


def test_eigh_non_convergence_reports_residual():
    A = random_hermitian(6, 1)
    with pytest.raises(EigenNotConverged) as info:
        eigh(A, max_sweeps=1)
    assert info.value.off_norm > 0
    assert info.value.sweeps == 1


def test_eigh_shift_moves_eigenvalues():
    A = random_hermitian(5, 11)
    c = 2.75
    shifted = eigh(A + HermitianMatrix.identity(5, c)).eigenvalues
    np.testing.assert_allclose(shifted, eigh(A).eigenvalues + c, atol=1e-10)


def test_eigh_deterministic():
    A = random_hermitian(6, 3)
    d1, d2 = eigh(A), eigh(A)
    assert np.array_equal(d1.eigenvalues, d2.eigenvalues)
    assert np.array_equal(d1.frame, d2.frame)


def test_min_eigenvalue_examples():
    assert min_eigenvalue(HermitianMatrix(np.zeros((3, 3)))) == 0.0
    assert min_eigenvalue(HermitianMatrix.diag([2.0, 5.0])) == 2.0
    assert min_eigenvalue(HermitianMatrix([[3.0, 1.0], [1.0, 0.0]])) == pytest.approx(
        (3 - math.sqrt(13)) / 2, abs=1e-14
    )


def test_loewner_order():
    A = HermitianMatrix.diag([1.0, 2.0])
    B = HermitianMatrix([[2.0, 1.0], [1.0, 3.0]])
    assert loewner_leq(A, B)
    assert not loewner_leq(B, A)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**31))
def test_min_of_A_and_minus_A(n, s):
    A = random_hermitian(n, s)
    assert min_eigenvalue(A) + min_eigenvalue(-A) <= 1e-12


def test_random_hermitian_contract():
    one = random_hermitian(1, 42)
    assert one.n == 1 and one.entries[0, 0].imag == 0
    a, b = random_hermitian(4, 7, 2.0), random_hermitian(4, 7, 2.0)
    assert np.array_equal(a.entries, b.entries)
    e = random_hermitian(4, 7).entries
    assert np.array_equal(e, e.conj().T)
    with pytest.raises(ValueError):
        random_hermitian(0, 1)


def test_json_round_trip():
    A = random_hermitian(3, 9)
    obj = A.to_json()
    assert obj["n"] == 3 and len(obj["entries"][0][0]) == 2
    assert np.array_equal(HermitianMatrix.from_json(obj).entries, A.entries)


def test_json_rejects_bad_layout():
    with pytest.raises(DimensionMismatch):
        HermitianMatrix.from_json({"n": 2, "entries": [[[1, 0], [0, 0]]]})
    with pytest.raises(ValueError):
        HermitianMatrix.from_json({"n": 0, "entries": []})
