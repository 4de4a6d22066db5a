import cmath
import math

import numpy as np
import pytest

from nosplit import combiner
from nosplit.combiner import combiner_input, combiner_statistics, parity_branches, run_combiner, xor_gate
from nosplit.splitcheck import DEFAULT_GRID
from nosplit.states import BlochAngles, fidelity_pure, schmidt
from conftest import random_state

SQ = 1 / math.sqrt(2)
GRID_ANGLES = [BlochAngles(t, p) for t in DEFAULT_GRID.thetas for p in DEFAULT_GRID.phis]


def test_combiner_input_examples():
    assert np.allclose(combiner_input(BlochAngles(0, 0)), [SQ, SQ, 0, 0])
    assert np.allclose(combiner_input(BlochAngles(math.pi / 2, 0)), [0.5] * 4)
    c, s, e = math.cos(math.pi / 6), math.sin(math.pi / 6), cmath.exp(1j * math.pi / 4)
    expected = np.array([c, c * e, s, s * e]) * SQ
    assert np.allclose(combiner_input(BlochAngles(math.pi / 3, math.pi / 4)), expected, atol=1e-15)


def test_parity_probabilities_half_on_grid():
    for a in GRID_ANGLES:
        even, odd = parity_branches(combiner_input(a))
        assert abs(even.probability - 0.5) <= 1e-12 and abs(odd.probability - 0.5) <= 1e-12


def test_parity_examples():
    even, odd = parity_branches([SQ, 0, 0, SQ])
    assert even.probability == pytest.approx(1) and odd.probability == 0 and odd.post_state is None
    even, odd = parity_branches([0, 1, 0, 0])
    assert even.probability == 0 and even.post_state is None and odd.probability == 1


def test_parity_probabilities_sum_to_one(rng):
    for _ in range(200):
        even, odd = parity_branches(random_state(rng, 4))
        assert abs(even.probability + odd.probability - 1) <= 1e-12
        for b in (even, odd):
            assert np.linalg.norm(b.post_state) == pytest.approx(1, abs=1e-12)


def test_xor_gate():
    assert np.array_equal(xor_gate([0, 0, 1, 0]), [0, 0, 0, 1])
    assert np.array_equal(xor_gate([0, 1, 0, 0]), [0, 1, 0, 0])
    theta, phi = 1.1, 2.3
    c, s = math.cos(theta / 2), math.sin(theta / 2) * cmath.exp(1j * phi)
    assert np.allclose(xor_gate([c, 0, 0, s]), np.kron([c, s], [1, 0]))


def test_branch_outputs_match_expected_states():
    for a in GRID_ANGLES:
        for branch in parity_branches(combiner_input(a)):
            after = xor_gate(branch.post_state)
            assert schmidt(after).r1 < 1e-10
            final = combiner.finish_branch(branch).final
            assert fidelity_pure(final, combiner.expected_final(a, branch.label)) >= 1 - 1e-12


def test_run_combiner_examples():
    rng = np.random.default_rng(0)
    for _ in range(10):
        r = run_combiner(BlochAngles(math.pi / 2, 0), rng)
        assert fidelity_pure(r.final, [SQ, SQ]) == pytest.approx(1, abs=1e-12)
        r = run_combiner(BlochAngles(0, 1.3), rng)
        assert fidelity_pure(r.final, [1, 0]) == pytest.approx(1, abs=1e-12)
    a = BlochAngles(math.pi / 3, math.pi / 4)
    even = combiner.finish_branch(parity_branches(combiner_input(a))[0])
    ref = [math.cos(math.pi / 6), math.sin(math.pi / 6) * cmath.exp(1j * math.pi / 4)]
    assert fidelity_pure(even.final, ref) == pytest.approx(1, abs=1e-12)


def test_discard_rejects_entangled():
    with pytest.raises(combiner.EntangledResidue):
        combiner.discard_second([SQ, 0, 0, SQ])


def test_statistics_consumes_rng_like_repeated_runs():
    a = BlochAngles(1.0, 2.0)
    stats = combiner_statistics(a, 500, np.random.default_rng(9))
    rng = np.random.default_rng(9)
    outcomes = [run_combiner(a, rng).outcome for _ in range(500)]
    assert stats.n_even == outcomes.count("even") and stats.n_odd == outcomes.count("odd")


def test_statistics_single_shot():
    stats = combiner_statistics(BlochAngles(1.0, 2.0), 1, np.random.default_rng(0))
    assert stats.n_even + stats.n_odd == 1
    assert (stats.empirical_fidelity_even is None) != (stats.empirical_fidelity_odd is None)
    with pytest.raises(ValueError):
        combiner_statistics(BlochAngles(1.0, 2.0), 0, np.random.default_rng(0))


@pytest.mark.parametrize("theta,phi", [(0.3, 0.0), (math.pi / 2, 1.0), (2.9, 5.5)])
def test_statistics_frequencies(theta, phi):
    stats = combiner_statistics(BlochAngles(theta, phi), 100_000, np.random.default_rng(123))
    assert abs(stats.n_even / 100_000 - 0.5) < 0.005
    assert stats.empirical_fidelity_even == pytest.approx(1, abs=1e-12)
    assert stats.empirical_fidelity_odd == pytest.approx(1, abs=1e-12)


def test_other_xor_orientation_gives_different_states():
    # control on the second qubit does not reproduce the documented outputs
    from nosplit import gates
    a = BlochAngles(1.0, 0.9)
    even = parity_branches(combiner_input(a))[0]
    kept = combiner.discard_second(gates.CNOT_BA @ even.post_state)
    assert fidelity_pure(kept, [1, 0]) == pytest.approx(1, abs=1e-12)
    assert fidelity_pure(kept, combiner.expected_final(a, "even")) < 0.9
