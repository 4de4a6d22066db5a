"""Does a two-qubit unitary split an unknown qubit?

A candidate ``U`` acting on ``|v(theta, phi)>_A |w>_B`` splits the qubit
when the marginal of A depends on ``theta`` only and the marginal of B on
``phi`` only. The functions here measure how badly both requirements fail
on an angle grid, and expose the coefficients (r0, r1, alpha, c, d) and the
seven polynomial conditions that the impossibility argument reduces to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import gates, qmat
from .states import BlochAngles, bloch_state, reduced, schmidt

UNITARY_ADMIT_TOL = 1e-8
DEGENERATE_R1 = 1e-8


class NotUnitary(ValueError):
    pass


def _default_thetas() -> tuple:
    return tuple(np.linspace(0.0, math.pi, 13))


def _default_phis() -> tuple:
    return tuple(2 * math.pi * k / 16 for k in range(16))


@dataclass(frozen=True)
class AngleGrid:
    thetas: tuple = field(default_factory=_default_thetas)
    phis: tuple = field(default_factory=_default_phis)

    def __post_init__(self):
        th = np.asarray(self.thetas, dtype=float)
        ph = np.asarray(self.phis, dtype=float)
        if th.size == 0 or ph.size == 0:
            raise ValueError("grid axes must be nonempty")
        if np.any(np.diff(th) < 0) or np.any(np.diff(ph) < 0):
            raise ValueError("grid axes must be sorted")
        if th[0] < 0 or th[-1] > math.pi or ph[0] < 0 or ph[-1] >= 2 * math.pi:
            raise ValueError("grid angles out of Bloch bounds")
        object.__setattr__(self, "thetas", tuple(float(t) for t in th))
        object.__setattr__(self, "phis", tuple(float(p) for p in ph))

    @classmethod
    def uniform(cls, theta_steps: int = 13, phi_steps: int = 16) -> "AngleGrid":
        if theta_steps < 1 or phi_steps < 1:
            raise ValueError("grid sizes must be positive")
        thetas = np.linspace(0.0, math.pi, theta_steps) if theta_steps > 1 else np.array([math.pi / 2])
        phis = 2 * math.pi * np.arange(phi_steps) / phi_steps
        return cls(tuple(thetas), tuple(phis))

    @cached_property
    def _weights(self) -> tuple[np.ndarray, np.ndarray]:
        half = 0.5 * np.asarray(self.thetas)
        cos = np.cos(half)[:, None, None]
        sin_phase = (np.sin(half)[:, None] * np.exp(1j * np.asarray(self.phis))[None, :])[..., None]
        return cos, sin_phase


DEFAULT_GRID = AngleGrid()


class SplitViolation(NamedTuple):
    vA: float
    vB: float
    total: float


@dataclass(frozen=True)
class ProofCoefficients:
    r0: float
    r1: float
    alpha: complex
    c: complex
    d: complex
    # r1 below DEGENERATE_R1: the second Schmidt vectors (hence c, d) are convention dependent
    degenerate: bool = False


class ConstraintResiduals(NamedTuple):
    res1: float
    res2: float
    res3: float
    res4: float
    res5: float
    res6: float
    res7: float

    @property
    def max(self) -> float:
        return max(self)


class CnotDemo(NamedTuple):
    psi: np.ndarray
    rho_a: np.ndarray
    rho_b: np.ndarray


def _check_inputs(u, w) -> tuple[np.ndarray, np.ndarray]:
    u = qmat.as_cmatrix(u)
    if u.shape != (4, 4) or not qmat.is_unitary(u, UNITARY_ADMIT_TOL):
        raise NotUnitary("candidate splitter must be a 4x4 unitary")
    w = qmat.as_cmatrix(w).reshape(-1)
    if w.shape != (2,) or abs(np.linalg.norm(w) - 1.0) > 1e-10:
        raise ValueError("ancilla must be a normalized qubit state")
    return u, w


def apply_split(u, angles: BlochAngles, w) -> np.ndarray:
    """U (|v(theta, phi)>_A |w>_B)"""
    u, w = _check_inputs(u, w)
    psi = u @ np.kron(bloch_state(angles), w)
    return psi / np.linalg.norm(psi)


def branch_outputs(u, w) -> tuple[np.ndarray, np.ndarray]:
    """The images U(|0>|w>) and U(|1>|w>)."""
    u = np.asarray(u, dtype=np.complex128)
    return u[:, 0:2] @ w, u[:, 2:4] @ w


def grid_states(u, w, grid: AngleGrid) -> np.ndarray:
    """Output states on the grid, shape ``(n_theta, n_phi, 4)``.

    Uses linearity: U(v x w) = cos(theta/2) U|0 w> + sin(theta/2) e^{i phi} U|1 w>.
    """
    psi0, psi1 = branch_outputs(u, w)
    cos, sin_phase = grid._weights
    return cos * psi0 + sin_phase * psi1


def _violations(u, w, grid: AngleGrid) -> tuple[float, float]:
    # For unit-trace 2x2 states the trace distance is half the Euclidean
    # distance between Bloch vectors (x, y, z).
    psi = grid_states(u, w, grid)
    m00, m01, m10, m11 = psi[..., 0], psi[..., 1], psi[..., 2], psi[..., 3]
    p00, p01, p10, p11 = (np.abs(psi) ** 2).transpose(2, 0, 1)
    off_a = m00 * m10.conj() + m01 * m11.conj()
    off_b = m00 * m01.conj() + m10 * m11.conj()
    bloch_a = (off_a.real, off_a.imag, 0.5 * (p00 + p01 - p10 - p11))
    # theta-pairs at fixed phi: transpose so pairs run along axis 1
    bloch_b = (off_b.real.T, off_b.imag.T, 0.5 * (p00 + p10 - p01 - p11).T)
    return _max_pair_distance(bloch_a), _max_pair_distance(bloch_b)


def _max_pair_distance(components) -> float:
    """Largest distance between points sharing a row; components are half Bloch coordinates."""
    total = 0.0
    for x in components:
        diff = x[:, :, None] - x[:, None, :]
        total = total + diff * diff
    return math.sqrt(float(total.max()))


def violation_A(u, w, grid: AngleGrid = DEFAULT_GRID) -> float:
    u, w = _check_inputs(u, w)
    return _violations(u, w, grid)[0]


def violation_B(u, w, grid: AngleGrid = DEFAULT_GRID) -> float:
    u, w = _check_inputs(u, w)
    return _violations(u, w, grid)[1]


def splitting_residual(u, w, grid: AngleGrid = DEFAULT_GRID) -> SplitViolation:
    """Grid violation of both splitting conditions; zero only for a splitter."""
    u, w = _check_inputs(u, w)
    v_a, v_b = _violations(u, w, grid)
    return SplitViolation(v_a, v_b, v_a + v_b)


def output_entanglement(u, w, grid: AngleGrid = DEFAULT_GRID) -> float:
    """Largest smaller Schmidt coefficient of the outputs over the grid."""
    u, w = _check_inputs(u, w)
    psis = grid_states(u, w, grid)
    return max(schmidt(psi).r1 for psi in psis.reshape(-1, 4))


def proof_coefficients(u, w) -> ProofCoefficients:
    """Expand U|0 w> in the Schmidt product basis of U|1 w>.

    With U|1 w> = r0|0~0~> + r1|1~1~>, orthogonality forces
    U|0 w> = alpha r1|0~0~> - alpha r0|1~1~> + c|0~1~> + d|1~0~>.
    """
    u, w = _check_inputs(u, w)
    psi0, psi1 = branch_outputs(u, w)
    sd = schmidt(psi1)
    # a_jk = <j~ k~ | psi0>
    a = sd.basis_a.conj().T @ psi0.reshape(2, 2) @ sd.basis_b.conj()
    alpha = a[0, 0] * sd.r1 - a[1, 1] * sd.r0
    return ProofCoefficients(
        r0=sd.r0,
        r1=sd.r1,
        alpha=complex(alpha),
        c=complex(a[0, 1]),
        d=complex(a[1, 0]),
        degenerate=sd.r1 < DEGENERATE_R1,
    )


def reconstruct_zero_branch(pc: ProofCoefficients, u, w) -> np.ndarray:
    """alpha r1|0~0~> - alpha r0|1~1~> + c|0~1~> + d|1~0~> in the computational basis."""
    u, w = _check_inputs(u, w)
    sd = schmidt(branch_outputs(u, w)[1])
    coeffs = np.array([[pc.alpha * pc.r1, pc.c], [pc.d, -pc.alpha * pc.r0]])
    return (sd.basis_a @ coeffs @ sd.basis_b.T).reshape(4)


def constraint_residuals(pc: ProofCoefficients) -> ConstraintResiduals:
    r0, r1 = float(pc.r0), float(pc.r1)
    alpha, c, d = complex(pc.alpha), complex(pc.c), complex(pc.d)
    return ConstraintResiduals(
        abs(d.conjugate() * r0),
        abs(c * r1),
        abs(c.conjugate() * r0),
        abs(d * r1),
        abs(alpha * r0 * r1),
        abs(abs(alpha) ** 2 * r1**2 + abs(d) ** 2 - r0**2),
        abs(c.conjugate() * alpha * r1 - d * alpha.conjugate() * r0),
    )


def cnot_demo(angles: BlochAngles) -> CnotDemo:
    """CNOT (control A) on |v(theta, phi)>|0>; both marginals are diag(cos^2, sin^2)."""
    psi = apply_split(gates.CNOT, angles, np.array([1.0, 0.0]))
    return CnotDemo(psi, reduced(psi, "A"), reduced(psi, "B"))
