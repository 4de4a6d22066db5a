"""The converse direction: merging an amplitude qubit and a phase qubit.

Starting from (cos(theta/2)|0> + sin(theta/2)|1>) x (|0> + e^{i phi}|1>)/sqrt(2),
a ZZ parity measurement, a CNOT (control = first qubit) and discarding the
second qubit leave the first qubit in

    even:  cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>
    odd:   cos(theta/2) e^{i phi}|0> + sin(theta/2)|1>

each with probability 1/2.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

import numpy as np

from . import gates
from .states import BlochAngles, fidelity_pure, schmidt

UNDEFINED_BRANCH = 1e-14
PRODUCT_TOL = 1e-10

EVEN = "even"
ODD = "odd"

_P_EVEN = np.array([1.0, 0.0, 0.0, 1.0])
_P_ODD = np.array([0.0, 1.0, 1.0, 0.0])


class EntangledResidue(RuntimeError):
    """The qubit to be discarded is still entangled (indicates a bug)."""


class ParityOutcome(NamedTuple):
    label: str
    probability: float
    post_state: Optional[np.ndarray]  # None when the branch has probability < 1e-14


class CombineResult(NamedTuple):
    outcome: str
    final: np.ndarray


class CombinerStats(NamedTuple):
    n_even: int
    n_odd: int
    empirical_fidelity_even: Optional[float]
    empirical_fidelity_odd: Optional[float]


def combiner_input(angles: BlochAngles) -> np.ndarray:
    half = 0.5 * angles.theta
    amplitude = np.array([math.cos(half), math.sin(half)])
    phase = np.array([1.0, np.exp(1j * angles.phi)]) / math.sqrt(2)
    return np.kron(amplitude, phase)


def expected_final(angles: BlochAngles, outcome: str) -> np.ndarray:
    half = 0.5 * angles.theta
    phase = np.exp(1j * angles.phi)
    if outcome == EVEN:
        return np.array([math.cos(half), math.sin(half) * phase])
    if outcome == ODD:
        return np.array([math.cos(half) * phase, math.sin(half)])
    raise ValueError(f"unknown outcome {outcome!r}")


def _project(psi: np.ndarray, mask: np.ndarray, label: str) -> ParityOutcome:
    projected = mask * psi
    prob = float(np.vdot(projected, projected).real)
    if prob < UNDEFINED_BRANCH:
        return ParityOutcome(label, prob, None)
    return ParityOutcome(label, prob, projected / math.sqrt(prob))


def parity_branches(psi) -> tuple[ParityOutcome, ParityOutcome]:
    """Outcomes of the ZZ parity measurement: (even, odd)."""
    psi = np.asarray(psi, dtype=np.complex128).reshape(4)
    return _project(psi, _P_EVEN, EVEN), _project(psi, _P_ODD, ODD)


def xor_gate(psi) -> np.ndarray:
    return gates.CNOT @ np.asarray(psi, dtype=np.complex128).reshape(4)


def discard_second(psi) -> np.ndarray:
    """State of the first qubit, after checking the pair is a product state."""
    sd = schmidt(psi)
    if sd.r1 >= PRODUCT_TOL:
        raise EntangledResidue(f"second qubit still entangled (r1={sd.r1:.3g})")
    return sd.basis_a[:, 0]


def finish_branch(branch: ParityOutcome) -> CombineResult:
    if branch.post_state is None:
        raise ValueError(f"{branch.label} branch has zero probability")
    return CombineResult(branch.label, discard_second(xor_gate(branch.post_state)))


def run_combiner(angles: BlochAngles, rng: np.random.Generator) -> CombineResult:
    even, odd = parity_branches(combiner_input(angles))
    branch = even if rng.random() < even.probability else odd
    return finish_branch(branch)


def combiner_statistics(angles: BlochAngles, shots: int, rng: np.random.Generator) -> CombinerStats:
    """Monte Carlo over ``shots`` runs of the protocol.

    Consumes the generator exactly like ``shots`` calls of ``run_combiner``.
    Outcome states are deterministic given the parity result, so each branch
    is carried through the gates once; fidelities are against the expected
    final states and are ``None`` for a branch that never occurred.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    even, odd = parity_branches(combiner_input(angles))
    draws = rng.random(shots)
    n_even = int(np.count_nonzero(draws < even.probability))
    n_odd = shots - n_even
    fid = {}
    for branch, count in ((even, n_even), (odd, n_odd)):
        if count:
            final = finish_branch(branch).final
            fid[branch.label] = fidelity_pure(final, expected_final(angles, branch.label))
    return CombinerStats(n_even, n_odd, fid.get(EVEN), fid.get(ODD))
