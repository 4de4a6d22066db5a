"""Adversarial search for a qubit splitter over U(4) x ancilla states.

Each restart minimizes the grid splitting residual with a Nelder-Mead
simplex from a random start. Restart ``k`` draws its start from its own
generator seeded by ``(seed, k)``, so results do not depend on the order
in which restarts are executed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import qmat
from .splitcheck import DEFAULT_GRID, AngleGrid, _violations
from .states import BlochAngles, bloch_state

N_U_PARAMS = 16
FLOOR = 1e-6


class NonFiniteObjective(ArithmeticError):
    pass


def _hermitian_basis() -> np.ndarray:
    basis = []
    for j in range(4):
        e = np.zeros((4, 4), dtype=np.complex128)
        e[j, j] = 1.0
        basis.append(e)
    for j in range(4):
        for k in range(j + 1, 4):
            sym = np.zeros((4, 4), dtype=np.complex128)
            sym[j, k] = sym[k, j] = 1 / math.sqrt(2)
            basis.append(sym)
    for j in range(4):
        for k in range(j + 1, 4):
            asym = np.zeros((4, 4), dtype=np.complex128)
            asym[j, k] = 1j / math.sqrt(2)
            asym[k, j] = -1j / math.sqrt(2)
            basis.append(asym)
    return np.array(basis)


HERMITIAN_BASIS = _hermitian_basis()


def param_to_unitary(u_params: Sequence[float], method: str = "jacobi") -> np.ndarray:
    """exp(iH) with H = sum_k p_k G_k over an orthonormal Hermitian basis of 4x4 matrices."""
    p = np.asarray(u_params, dtype=float)
    if p.shape != (N_U_PARAMS,):
        raise ValueError(f"expected {N_U_PARAMS} generator coefficients")
    if not np.all(np.isfinite(p)):
        raise qmat.NonFinite("generator coefficients must be finite")
    h = np.tensordot(p, HERMITIAN_BASIS, axes=1)
    return qmat.unitary_from_hermitian(h, method=method)


def haar_unitary(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    """Haar-distributed unitary from a complex Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    return qmat.gram_schmidt_unitary(z)


def random_qubit(rng: np.random.Generator) -> np.ndarray:
    """Uniformly distributed pure qubit state (Haar on the Bloch sphere)."""
    z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return z / np.linalg.norm(z)


class NelderMeadResult(NamedTuple):
    x_best: np.ndarray
    f_best: float
    evals: int


def nelder_mead(
    objective: Callable[[np.ndarray], float],
    x0: Sequence[float],
    max_evals: int = 20000,
    simplex_tol: float = 1e-10,
    step: float = 0.25,
    x_tol: float = 1e-8,
) -> NelderMeadResult:
    """Minimize ``objective`` with the standard simplex method.

    Reflection 1, expansion 2, contraction 0.5, shrink 0.5. Stops when the
    spread of function values over the simplex drops below ``simplex_tol``
    and no vertex lies farther than ``x_tol`` (max-norm) from the best one,
    or after ``max_evals`` evaluations. The second test keeps a simplex
    straddling a minimum with equal values at its vertices from stopping.
    """
    evals = 0

    def f(x):
        nonlocal evals
        evals += 1
        val = float(objective(x))
        if not math.isfinite(val):
            raise NonFiniteObjective(f"objective returned {val} at {x!r}")
        return val

    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    simplex = np.vstack([x0, x0 + step * np.eye(n)])
    fvals = np.array([f(x) for x in simplex])

    while evals < max_evals:
        order = np.argsort(fvals, kind="stable")
        simplex, fvals = simplex[order], fvals[order]
        if fvals[-1] - fvals[0] < simplex_tol and np.abs(simplex[1:] - simplex[0]).max() <= x_tol:
            break
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]

        xr = centroid + (centroid - worst)
        fr = f(xr)
        if fr < fvals[0]:
            xe = centroid + 2.0 * (centroid - worst)
            fe = f(xe)
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
            continue
        if fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
            continue
        if fr < fvals[-1]:
            # outside contraction
            xc = centroid + 0.5 * (xr - centroid)
            fc = f(xc)
            if fc <= fr:
                simplex[-1], fvals[-1] = xc, fc
                continue
        else:
            xc = centroid + 0.5 * (worst - centroid)
            fc = f(xc)
            if fc < fvals[-1]:
                simplex[-1], fvals[-1] = xc, fc
                continue
        # shrink toward the best vertex
        simplex[1:] = simplex[0] + 0.5 * (simplex[1:] - simplex[0])
        for i in range(1, n + 1):
            fvals[i] = f(simplex[i])

    best = int(np.argmin(fvals))
    return NelderMeadResult(simplex[best].copy(), float(fvals[best]), evals)


@dataclass(frozen=True)
class SearchParams:
    u_params: tuple
    w_params: tuple  # (theta, phi) of the ancilla, wrapped onto the sphere

    @classmethod
    def from_vector(cls, x: Sequence[float]) -> "SearchParams":
        x = [float(v) for v in x]
        w = BlochAngles.wrapped(x[16], x[17])
        return cls(tuple(x[:16]), (w.theta, w.phi))

    def unitary(self, method: str = "jacobi") -> np.ndarray:
        return param_to_unitary(self.u_params, method=method)

    def ancilla(self) -> np.ndarray:
        return bloch_state(BlochAngles(*self.w_params))


@dataclass(frozen=True)
class SearchOptions:
    restarts: int = 100
    max_evals_per_restart: int = 20000
    simplex_tol: float = 1e-10
    seed: int = 0
    grid: AngleGrid = field(default_factory=lambda: DEFAULT_GRID)

    def __post_init__(self):
        if self.restarts < 1 or self.max_evals_per_restart < 1:
            raise ValueError("restart and evaluation counts must be positive")
        if not self.simplex_tol > 0:
            raise ValueError("simplex_tol must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


class RestartRecord(NamedTuple):
    restart: int
    total: float
    converged: bool


@dataclass(frozen=True)
class SearchResult:
    best_params: SearchParams
    best_total: float
    best_vA: float
    best_vB: float
    restarts: int
    evals: int
    seed: int
    history: tuple  # RestartRecord per restart, in restart order


def objective_vector(x: np.ndarray, grid: AngleGrid = DEFAULT_GRID, method: str = "lapack") -> float:
    """Total splitting residual for the 18-vector (16 generator coefficients, ancilla angles)."""
    u = param_to_unitary(x[:16], method=method)
    half = 0.5 * x[16]
    # wrapping the ancilla angles only changes w by a global phase
    w = np.array([math.cos(half), math.sin(half) * complex(math.cos(x[17]), math.sin(x[17]))])
    v_a, v_b = _violations(u, w, grid)
    return v_a + v_b


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    # SeedSequence hashes the (seed, restart) pair into an independent stream
    return np.random.default_rng(np.random.SeedSequence([seed, restart]))


def initial_point(rng: np.random.Generator) -> np.ndarray:
    u_params = rng.normal(0.0, math.pi, N_U_PARAMS)
    theta = rng.uniform(0.0, math.pi)
    phi = rng.uniform(0.0, 2 * math.pi)
    return np.concatenate([u_params, [theta, phi]])


def run_restart(opts: SearchOptions, k: int, x0: np.ndarray | None = None) -> tuple[RestartRecord, np.ndarray, int]:
    if x0 is None:
        x0 = initial_point(restart_rng(opts.seed, k))
    try:
        res = nelder_mead(
            lambda x: objective_vector(x, opts.grid),
            x0,
            max_evals=opts.max_evals_per_restart,
            simplex_tol=opts.simplex_tol,
        )
    except (NonFiniteObjective, qmat.NonFinite, np.linalg.LinAlgError):
        return RestartRecord(k, math.inf, False), x0, 0
    return RestartRecord(k, res.f_best, True), res.x_best, res.evals


def search_splitter(opts: SearchOptions = SearchOptions(), progress: Callable | None = None) -> SearchResult:
    """Multi-start Nelder-Mead minimization of the splitting residual."""
    history = []
    best_x = None
    best_total = math.inf
    evals = 0
    for k in range(opts.restarts):
        record, x, n = run_restart(opts, k)
        history.append(record)
        evals += n
        if record.converged and record.total < best_total:
            best_total, best_x = record.total, x
        if progress is not None:
            progress(record)
    if best_x is None:
        raise NonFiniteObjective("every restart failed")
    params = SearchParams.from_vector(best_x)
    v_a, v_b = _violations(params.unitary(method="lapack"), params.ancilla(), opts.grid)
    return SearchResult(
        best_params=params,
        best_total=best_total,
        best_vA=v_a,
        best_vB=v_b,
        restarts=opts.restarts,
        evals=evals,
        seed=opts.seed,
        history=tuple(history),
    )
