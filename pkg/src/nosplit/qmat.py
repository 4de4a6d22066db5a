"""Small dense complex linear algebra (dimensions 2 and 4).

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Column vectors
may be passed either as 1-d arrays or as ``(n, 1)`` arrays.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

CONSTRUCTION_TOL = 1e-10
ZERO_TOL = 1e-14
COMPARE_TOL = 1e-12


class NotHermitian(ValueError):
    pass


class RankDeficient(ValueError):
    pass


class NonFinite(ValueError):
    pass


class EigenSystem(NamedTuple):
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray  # columns


class SVD2(NamedTuple):
    sigma0: float
    sigma1: float
    left: np.ndarray
    right: np.ndarray


def as_cmatrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix contains NaN or Inf")
    return a


def tensor(a, b) -> np.ndarray:
    """Kronecker product; row index is ``i_a * rows_b + i_b``."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def adjoint(m) -> np.ndarray:
    return np.conj(as_cmatrix(m)).T


def frobenius(m) -> float:
    return float(np.sqrt(np.sum(np.abs(m) ** 2)))


def is_unitary(m, tol: float = CONSTRUCTION_TOL) -> bool:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    if not np.all(np.isfinite(m)):
        return False
    return frobenius(m.conj().T @ m - np.eye(m.shape[0])) <= tol


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # Deterministic gauge: first component with modulus > ZERO_TOL made real positive.
    for x in v:
        if abs(x) > ZERO_TOL:
            return v * (abs(x) / x)
    return v


def _eigen_2x2(h: np.ndarray) -> EigenSystem:
    a = h[0, 0].real
    d = h[1, 1].real
    b = h[0, 1]
    mean = 0.5 * (a + d)
    half = 0.5 * (a - d)
    radius = np.hypot(half, abs(b))
    lam = np.array([mean - radius, mean + radius])
    if abs(b) <= ZERO_TOL * max(1.0, radius):
        # already diagonal; order the canonical vectors by eigenvalue
        vecs = np.eye(2, dtype=np.complex128)
        if a > d:
            vecs = vecs[:, ::-1]
        return EigenSystem(np.sort(np.array([a, d])), vecs)
    # (H - lam I) v = 0  =>  v ∝ (b, lam - a)
    cols = []
    for value in lam:
        # pick the better-conditioned of the two null-vector formulas
        v1 = np.array([b, value - a])
        v2 = np.array([value - d, np.conj(b)])
        v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
        cols.append(_fix_phase(v / np.linalg.norm(v)))
    return EigenSystem(lam, np.column_stack(cols))


def _jacobi(h: np.ndarray, off_tol: float = ZERO_TOL, max_sweeps: int = 100) -> EigenSystem:
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=np.complex128)
    scale = max(1.0, frobenius(h))
    for _ in range(max_sweeps):
        off = frobenius(a - np.diag(np.diag(a)))
        if off < off_tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = 0.5 * np.arctan2(2.0 * mag, aqq - app)
                c = np.cos(theta)
                s = np.sin(theta)
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    lam = np.diag(a).real
    order = np.argsort(lam, kind="stable")
    vecs = v[:, order]
    vecs = np.column_stack([_fix_phase(vecs[:, j]) for j in range(n)])
    return EigenSystem(lam[order], vecs)


def hermitian_eigen(h, tol: float = CONSTRUCTION_TOL, method: str = "jacobi") -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Closed form for 2x2, cyclic complex Jacobi rotations otherwise.
    ``method="lapack"`` hands sizes above 2 to ``numpy.linalg.eigh``
    instead (roughly 50x faster, used in optimizer inner loops).
    Eigenvalues are ascending; each eigenvector's first non-negligible
    component is real and positive.
    """
    h = as_cmatrix(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("square matrix required")
    if frobenius(h - h.conj().T) > tol:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    h = 0.5 * (h + h.conj().T)
    if h.shape[0] == 1:
        return EigenSystem(np.array([h[0, 0].real]), np.ones((1, 1), dtype=np.complex128))
    if h.shape[0] == 2:
        return _eigen_2x2(h)
    if method == "lapack":
        lam, vecs = np.linalg.eigh(h)
        return EigenSystem(lam, np.column_stack([_fix_phase(vecs[:, j]) for j in range(h.shape[0])]))
    if method != "jacobi":
        raise ValueError(f"unknown eigen method {method!r}")
    return _jacobi(h)


def unitary_from_hermitian(h, tol: float = CONSTRUCTION_TOL, method: str = "jacobi") -> np.ndarray:
    """``exp(iH)`` via the eigendecomposition of ``H``."""
    lam, vecs = hermitian_eigen(h, tol, method)
    return (vecs * np.exp(1j * lam)) @ vecs.conj().T


def _complete_basis(cols: list[np.ndarray], n: int) -> list[np.ndarray]:
    """Extend orthonormal ``cols`` to a basis by Gram-Schmidt on e_0, e_1, ..."""
    cols = list(cols)
    for k in range(n):
        if len(cols) == n:
            break
        e = np.zeros(n, dtype=np.complex128)
        e[k] = 1.0
        for c in cols:
            e = e - np.vdot(c, e) * c
        norm = np.linalg.norm(e)
        if norm > 1e-6:
            cols.append(e / norm)
    return cols


def svd2x2(m) -> SVD2:
    """Singular value decomposition of a 2x2 complex matrix.

    ``m == left @ diag(sigma0, sigma1) @ adjoint(right)`` with
    ``sigma0 >= sigma1 >= 0``.
    """
    m = as_cmatrix(m).reshape(2, 2)
    _, vecs = hermitian_eigen(m.conj().T @ m)
    right = vecs[:, ::-1]
    u0 = m @ right[:, 0]
    sigma0 = float(np.linalg.norm(u0))
    if sigma0 < ZERO_TOL:
        eye = np.eye(2, dtype=np.complex128)
        return SVD2(0.0, 0.0, eye, eye)
    u0 = u0 / sigma0
    # Project m v1 against u0 rather than dividing by a tiny sigma1.
    w = m @ right[:, 1]
    w = w - np.vdot(u0, w) * u0
    sigma1 = float(np.linalg.norm(w))
    if sigma1 < ZERO_TOL:
        sigma1 = 0.0
        u0, u1 = _complete_basis([u0], 2)
    else:
        u1 = w / sigma1
    return SVD2(sigma0, sigma1, np.column_stack([u0, u1]), right)


def gram_schmidt_unitary(m) -> np.ndarray:
    """Orthonormalize the columns of ``m`` (modified Gram-Schmidt).

    The implicit triangular factor has a positive real diagonal, which is
    the phase convention that makes Ginibre input map to Haar output.
    """
    a = as_cmatrix(m).copy()
    n = a.shape[1]
    q = np.zeros_like(a)
    r_diag = np.zeros(n, dtype=np.complex128)
    for j in range(n):
        v = a[:, j]
        for i in range(j):
            v = v - np.vdot(q[:, i], v) * q[:, i]
        # second pass for orthogonality at double precision
        for i in range(j):
            v = v - np.vdot(q[:, i], v) * q[:, i]
        norm = np.linalg.norm(v)
        if norm <= 1e-12:
            raise RankDeficient(f"column {j} is linearly dependent on earlier columns")
        r_diag[j] = norm
        q[:, j] = v / norm
    return q * np.conj(r_diag / np.abs(r_diag))
