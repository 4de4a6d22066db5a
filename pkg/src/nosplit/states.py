"""Qubit states, reduced density matrices and the two-qubit Schmidt form.

Two-qubit amplitudes are ordered ``|ab>`` -> index ``2*a + b`` with qubit A
as the first tensor factor, the same convention as :func:`qmat.tensor`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import qmat

NORM_TOL = 1e-10


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class BlochAngles:
    """Polar angle ``theta`` in [0, pi] and azimuth ``phi`` in [0, 2 pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("Bloch angles must be finite")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta={self.theta} outside [0, pi]")
        if not 0.0 <= self.phi < 2 * math.pi:
            raise ValueError(f"phi={self.phi} outside [0, 2pi)")

    @classmethod
    def wrapped(cls, theta: float, phi: float) -> "BlochAngles":
        """Fold arbitrary reals onto the sphere (used by the optimizer)."""
        theta = theta % (2 * math.pi)
        if theta > math.pi:
            # reflection through the pole flips the azimuth
            theta = 2 * math.pi - theta
            phi = phi + math.pi
        phi = phi % (2 * math.pi)
        if phi >= 2 * math.pi:
            phi = 0.0
        return cls(theta, phi)


class SchmidtDecomp(NamedTuple):
    r0: float
    r1: float
    basis_a: np.ndarray  # columns |0~>_A, |1~>_A
    basis_b: np.ndarray  # columns |0~>_B, |1~>_B

    def reconstruct(self) -> np.ndarray:
        return (self.r0 * np.kron(self.basis_a[:, 0], self.basis_b[:, 0])
                + self.r1 * np.kron(self.basis_a[:, 1], self.basis_b[:, 1]))


def pure_state(amplitudes, tol: float = NORM_TOL) -> np.ndarray:
    """Validate a 2- or 4-dimensional normalized amplitude vector."""
    psi = qmat.as_cmatrix(amplitudes).reshape(-1)
    if psi.shape[0] not in (2, 4):
        raise DimensionMismatch(f"state dimension {psi.shape[0]} is not 2 or 4")
    if abs(np.linalg.norm(psi) - 1.0) > tol:
        raise ValueError("state is not normalized")
    return psi


def bloch_state(angles: BlochAngles) -> np.ndarray:
    """cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>."""
    half = 0.5 * angles.theta
    return np.array([math.cos(half), math.sin(half) * np.exp(1j * angles.phi)])


def density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
    return np.outer(psi, psi.conj())


def reduced(psi, keep: str) -> np.ndarray:
    """Partial trace of a two-qubit pure state, keeping qubit ``"A"`` or ``"B"``."""
    m = np.asarray(psi, dtype=np.complex128).reshape(2, 2)
    if keep == "A":
        return m @ m.conj().T
    if keep == "B":
        return m.T @ m.conj()
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def reduced_batch(psis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Both marginals for an array of two-qubit states of shape ``(..., 4)``."""
    m = psis.reshape(psis.shape[:-1] + (2, 2))
    rho_a = np.einsum("...ab,...cb->...ac", m, m.conj())
    rho_b = np.einsum("...ab,...ac->...bc", m, m.conj())
    return rho_a, rho_b


def trace_distance_batch(rho: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Half the trace norm of ``rho - sigma`` for broadcastable stacks of 2x2 matrices."""
    delta = rho - sigma
    mean = 0.5 * (delta[..., 0, 0].real + delta[..., 1, 1].real)
    half = 0.5 * (delta[..., 0, 0].real - delta[..., 1, 1].real)
    radius = np.hypot(half, np.abs(delta[..., 0, 1]))
    return 0.5 * (np.abs(mean + radius) + np.abs(mean - radius))


def trace_distance(rho, sigma) -> float:
    return float(trace_distance_batch(np.asarray(rho, dtype=np.complex128),
                                      np.asarray(sigma, dtype=np.complex128)))


def fidelity_pure(a, b) -> float:
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot compare states of dimension {a.size} and {b.size}")
    return float(abs(np.vdot(a, b)) ** 2)


def schmidt(psi) -> SchmidtDecomp:
    """Schmidt form r0|0~0~> + r1|1~1~> with r0 >= r1 >= 0.

    When r1 vanishes (or r0 == r1) the second basis vectors are fixed by
    completing against the computational basis in order, so the result is
    deterministic but convention dependent.
    """
    m = np.asarray(psi, dtype=np.complex128).reshape(2, 2)
    svd = qmat.svd2x2(m)
    return SchmidtDecomp(svd.sigma0, svd.sigma1, svd.left, svd.right.conj())
