import cmath
import math

import numpy as np
import pytest

from nosplit import gates, qmat
from conftest import random_hermitian


def test_tensor_identity_and_basis():
    assert np.array_equal(qmat.tensor(gates.I2, gates.I2), gates.I4)
    e0, e1 = np.array([[1], [0]]), np.array([[0], [1]])
    assert np.array_equal(qmat.tensor(e0, e1).ravel(), [0, 1, 0, 0])


def test_tensor_pauli_on_first_factor():
    ket00 = np.array([1, 0, 0, 0])
    assert np.array_equal(qmat.tensor(gates.X, gates.I2) @ ket00, [0, 0, 1, 0])


def test_tensor_bilinear(rng):
    m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    a = 0.3 - 1.7j
    assert np.allclose(qmat.tensor(a * m, b), a * qmat.tensor(m, b), atol=1e-14)


def test_tensor_rejects_nonfinite():
    with pytest.raises(qmat.NonFinite):
        qmat.tensor([[np.nan]], [[1.0]])


def test_adjoint(rng):
    assert np.array_equal(qmat.adjoint(gates.I4), gates.I4)
    assert np.array_equal(qmat.adjoint(np.diag([1j, -1j])), np.diag([-1j, 1j]))
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    assert np.array_equal(qmat.adjoint(qmat.adjoint(m)), m)


def test_eigen_pauli_z():
    lam, v = qmat.hermitian_eigen(gates.Z)
    assert np.allclose(lam, [-1, 1])
    assert np.allclose(v[:, 0], [0, 1]) and np.allclose(v[:, 1], [1, 0])


def test_eigen_pauli_x():
    lam, v = qmat.hermitian_eigen(gates.X)
    assert np.allclose(lam, [-1, 1])
    s = 1 / math.sqrt(2)
    assert abs(abs(np.vdot(v[:, 0], [s, -s])) - 1) < 1e-12
    assert abs(abs(np.vdot(v[:, 1], [s, s])) - 1) < 1e-12


@pytest.mark.parametrize("seed", range(20))
def test_eigen_2x2_matches_quadratic_formula(seed):
    h = random_hermitian(np.random.default_rng(seed), 2)
    a, d, b = h[0, 0].real, h[1, 1].real, h[0, 1]
    # roots of x^2 - (a + d) x + (a d - |b|^2)
    tr, det = a + d, a * d - abs(b) ** 2
    disc = math.sqrt(tr * tr - 4 * det)
    expected = [(tr - disc) / 2, (tr + disc) / 2]
    lam, v = qmat.hermitian_eigen(h)
    assert np.allclose(lam, expected, atol=1e-12)
    assert abs(lam.sum() - np.trace(h).real) < 1e-10
    assert abs(lam.prod() - np.linalg.det(h).real) < 1e-10


@pytest.mark.parametrize("dim", [2, 3, 4, 6])
def test_eigen_reconstruction_and_residuals(rng, dim):
    for _ in range(20):
        h = random_hermitian(rng, dim, scale=3.0)
        lam, v = qmat.hermitian_eigen(h)
        assert np.all(np.diff(lam) >= 0)
        assert qmat.is_unitary(v, 1e-10)
        for i in range(dim):
            assert np.linalg.norm(h @ v[:, i] - lam[i] * v[:, i]) <= 1e-10
        err = qmat.frobenius(v @ np.diag(lam) @ v.conj().T - h)
        assert err <= 1e-10 * max(1.0, qmat.frobenius(h))


def test_jacobi_agrees_with_lapack(rng):
    for _ in range(20):
        h = random_hermitian(rng, 4)
        a = qmat.hermitian_eigen(h, method="jacobi")
        b = qmat.hermitian_eigen(h, method="lapack")
        assert np.allclose(a.eigenvalues, b.eigenvalues, atol=1e-12)
        # same gauge convention, and generic spectrum -> same vectors
        assert np.allclose(a.eigenvectors, b.eigenvectors, atol=1e-9)


def test_eigen_degenerate_4x4():
    h = np.diag([1.0, 1.0, 2.0, 2.0]).astype(complex)
    lam, v = qmat.hermitian_eigen(h)
    assert np.allclose(lam, [1, 1, 2, 2]) and qmat.is_unitary(v)


def test_not_hermitian():
    with pytest.raises(qmat.NotHermitian):
        qmat.hermitian_eigen(np.array([[0, 1], [0, 0]]))
    with pytest.raises(qmat.NotHermitian):
        qmat.unitary_from_hermitian(np.array([[0, 1j], [1j, 0]]))


def test_unitary_from_hermitian_closed_forms():
    assert np.allclose(qmat.unitary_from_hermitian(np.zeros((4, 4))), gates.I4, atol=1e-15)
    assert np.allclose(qmat.unitary_from_hermitian(np.pi * gates.Z), -gates.I2, atol=1e-12)
    # exp(i a X) = cos a I + i sin a X
    a = math.pi / 2
    assert np.allclose(qmat.unitary_from_hermitian(a * gates.X), 1j * gates.X, atol=1e-12)
    a = 0.37
    expected = math.cos(a) * gates.I2 + 1j * math.sin(a) * gates.X
    assert np.allclose(qmat.unitary_from_hermitian(a * gates.X), expected, atol=1e-12)


def test_unitary_from_hermitian_inverse_pair(rng):
    for _ in range(20):
        h = random_hermitian(rng, 4, scale=2.0)
        u = qmat.unitary_from_hermitian(h)
        assert qmat.is_unitary(u, 1e-10)
        assert qmat.frobenius(u @ qmat.unitary_from_hermitian(-h) - np.eye(4)) <= 1e-10


def test_unitary_from_hermitian_diagonal_oracle(rng):
    lam = rng.uniform(-5, 5, 4)
    u = qmat.unitary_from_hermitian(np.diag(lam))
    assert np.allclose(u, np.diag([cmath.exp(1j * x) for x in lam]), atol=1e-12)


def test_is_unitary():
    assert qmat.is_unitary(gates.I4, 1e-10)
    assert not qmat.is_unitary(2 * gates.I2, 1e-10)
    assert not qmat.is_unitary(np.ones((2, 3)))


def test_svd_simple_cases():
    s = qmat.svd2x2(gates.I2)
    assert (s.sigma0, s.sigma1) == pytest.approx((1, 1))
    s = qmat.svd2x2(np.array([[0, 0], [0, 1]]))
    assert (s.sigma0, s.sigma1) == (1.0, 0.0)
    assert qmat.is_unitary(s.left) and qmat.is_unitary(s.right)


@pytest.mark.parametrize("seed", range(30))
def test_svd_random(seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    s = qmat.svd2x2(m)
    assert s.sigma0 >= s.sigma1 >= 0
    recon = s.left @ np.diag([s.sigma0, s.sigma1]) @ s.right.conj().T
    assert qmat.frobenius(recon - m) <= 1e-12 * max(1.0, qmat.frobenius(m))
    assert abs(s.sigma0**2 + s.sigma1**2 - qmat.frobenius(m) ** 2) <= 1e-12 * qmat.frobenius(m) ** 2
    assert qmat.is_unitary(s.left, 1e-12) and qmat.is_unitary(s.right, 1e-12)


def test_svd_unitary_invariance(rng):
    from nosplit.searcher import haar_unitary
    for _ in range(20):
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        a, b = haar_unitary(rng, 2), haar_unitary(rng, 2)
        s1, s2 = qmat.svd2x2(m), qmat.svd2x2(a @ m @ b)
        assert abs(s1.sigma0 - s2.sigma0) < 1e-10 and abs(s1.sigma1 - s2.sigma1) < 1e-10


def test_svd_nearly_rank_one():
    m = np.outer([0.6, 0.8j], [1, 1j]) / math.sqrt(2) + 1e-11 * np.array([[1, 0], [0, -1]])
    s = qmat.svd2x2(m)
    assert qmat.is_unitary(s.left, 1e-12)
    assert qmat.frobenius(s.left @ np.diag([s.sigma0, s.sigma1]) @ s.right.conj().T - m) < 1e-14


def test_gram_schmidt():
    assert np.allclose(qmat.gram_schmidt_unitary(np.diag([2.0, 3.0])), gates.I2)
    u = qmat.gram_schmidt_unitary(gates.H)
    assert np.allclose(np.abs(np.sum(u.conj() * gates.H, axis=0)), 1)
    with pytest.raises(qmat.RankDeficient):
        qmat.gram_schmidt_unitary(np.array([[1, 2], [1, 2]]))


def test_gram_schmidt_ginibre(rng):
    for _ in range(50):
        z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        assert qmat.is_unitary(qmat.gram_schmidt_unitary(z), 1e-12)
