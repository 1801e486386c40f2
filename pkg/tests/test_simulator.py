import math

import numpy as np
import pytest
from scipy.stats import chisquare

from vqopt import ising, simulator as sim
from vqopt.errors import CapacityError, DomainError, IntegrityError

from oracles import (
    HADAMARD,
    dense_cnot,
    dense_rx,
    dense_ry,
    dense_rz,
    dense_rzz,
    kron_on,
)


def random_state(size: int, rng) -> sim.StateVector:
    amps = rng.standard_normal(2**size) + 1j * rng.standard_normal(2**size)
    amps /= np.linalg.norm(amps)
    return sim.StateVector(size, amps)


def test_init_states():
    assert sim.init_zero(2).amplitudes.tolist() == [1, 0, 0, 0]
    assert np.allclose(sim.init_plus(2).amplitudes, 0.5)
    st = sim.init_plus(7)
    assert np.allclose(st.probabilities(), 2.0**-7)
    with pytest.raises(CapacityError):
        sim.init_zero(25)
    with pytest.raises(CapacityError):
        sim.init_plus(0)


def test_ry_pi_flips_zero_to_one():
    st = sim.init_zero(1)
    sim.apply_ry(st, 0, math.pi)
    assert np.allclose(st.amplitudes, [0, 1], atol=1e-12)


def test_cnot_permutation():
    st = sim.StateVector(2, np.array([0, 0, 0, 1], dtype=complex))
    sim.apply_cnot(st, 0, 1)
    assert st.amplitudes.tolist() == [0, 1, 0, 0]
    sim.apply_cnot(st, 0, 1)
    assert st.amplitudes.tolist() == [0, 0, 0, 1]


def test_rzz_phase_on_00():
    st = sim.init_zero(2)
    sim.apply_rzz(st, 0, 1, 0.7)
    assert st.amplitudes[0] == pytest.approx(np.exp(0.35j))


@pytest.mark.parametrize("gate,dense", [
    ("ry", dense_ry), ("rx", dense_rx), ("rz", dense_rz),
])
def test_single_qubit_gates_match_matrix_exponentials(gate, dense):
    rng = np.random.default_rng(3)
    apply = {"ry": sim.apply_ry, "rx": sim.apply_rx, "rz": sim.apply_rz}[gate]
    for _ in range(10):
        size = int(rng.integers(1, 6))
        qubit = int(rng.integers(0, size))
        theta = float(rng.uniform(-2 * math.pi, 2 * math.pi))
        st = random_state(size, rng)
        expected = kron_on(dense(theta), (qubit,), size) @ st.amplitudes
        apply(st, qubit, theta)
        assert np.allclose(st.amplitudes, expected, atol=1e-12)


def test_two_qubit_gates_match_matrix_exponentials():
    rng = np.random.default_rng(4)
    for _ in range(10):
        size = int(rng.integers(2, 6))
        qubit = int(rng.integers(0, size - 1))
        theta = float(rng.uniform(-2 * math.pi, 2 * math.pi))

        st = random_state(size, rng)
        expected = kron_on(dense_rzz(theta), (qubit, qubit + 1), size) @ st.amplitudes
        sim.apply_rzz(st, qubit, qubit + 1, theta)
        assert np.allclose(st.amplitudes, expected, atol=1e-12)

        st = random_state(size, rng)
        expected = kron_on(dense_cnot(), (qubit, qubit + 1), size) @ st.amplitudes
        sim.apply_cnot(st, qubit, qubit + 1)
        assert np.allclose(st.amplitudes, expected, atol=1e-12)


def test_cnot_any_pair_against_bit_arithmetic():
    rng = np.random.default_rng(5)
    size = 4
    for _ in range(8):
        control, target = rng.choice(size, size=2, replace=False)
        st = random_state(size, rng)
        before = st.amplitudes.copy()
        sim.apply_cnot(st, int(control), int(target))
        for x in range(2**size):
            src = x ^ (1 << int(target)) if (x >> int(control)) & 1 else x
            assert st.amplitudes[x] == before[src]


def test_diagonal_phase_identity_and_global_phase():
    rng = np.random.default_rng(6)
    st = random_state(3, rng)
    before = st.amplitudes.copy()
    sim.apply_diagonal_phase(st, np.arange(8.0), 0.0)
    assert np.array_equal(st.amplitudes, before)
    sim.apply_diagonal_phase(st, np.full(8, 2.5), 1.3)
    assert np.allclose(st.probabilities(), np.abs(before) ** 2, atol=1e-12)


def test_diagonal_phase_equals_gate_decomposition():
    # phase layer built from rzz/rz gates must equal the table-driven path
    rng = np.random.default_rng(7)
    for trial in range(20):
        size = int(rng.integers(2, 7))
        if trial % 2 == 0:
            inst = ising.make_ferromagnetic(size)
        else:
            inst = ising.make_disordered(size, trial)
        gamma = float(rng.uniform(-2.0, 2.0))
        table = ising.energy_table(inst)

        st_diag = random_state(size, rng)
        st_gate = st_diag.copy()
        sim.apply_diagonal_phase(st_diag, table, -gamma)
        for j in range(size - 1):
            sim.apply_rzz(st_gate, j, j + 1, 2.0 * gamma * inst.couplings[j])
        for j in range(size):
            sim.apply_rz(st_gate, j, 2.0 * gamma * inst.fields[j])
        overlap = abs(np.vdot(st_diag.amplitudes, st_gate.amplitudes))
        assert overlap == pytest.approx(1.0, abs=1e-10)


def test_diagonal_phase_shape_mismatch():
    st = sim.init_plus(3)
    with pytest.raises(DomainError):
        sim.apply_diagonal_phase(st, np.zeros(4), 0.1)


def test_norm_preserved_under_random_gate_strings():
    rng = np.random.default_rng(8)
    for size in (2, 5, 8):
        st = random_state(size, rng)
        for _ in range(100):
            pick = rng.integers(0, 4)
            q = int(rng.integers(0, size))
            theta = float(rng.uniform(-math.pi, math.pi))
            if pick == 0:
                sim.apply_ry(st, q, theta)
            elif pick == 1:
                sim.apply_rx(st, q, theta)
            elif pick == 2:
                sim.apply_rz(st, q, theta)
            else:
                q2 = int(rng.integers(0, size))
                if q2 == q:
                    q2 = (q + 1) % size
                sim.apply_rzz(st, q, q2, theta)
        assert abs(st.norm_squared() - 1.0) < 1e-9


def test_gate_inverse_returns_original():
    rng = np.random.default_rng(9)
    st = random_state(4, rng)
    original = st.amplitudes.copy()
    for apply, inverse_sign in ((sim.apply_ry, -1), (sim.apply_rx, -1), (sim.apply_rz, -1)):
        theta = float(rng.uniform(-math.pi, math.pi))
        apply(st, 2, theta)
        apply(st, 2, inverse_sign * theta)
        assert np.allclose(st.amplitudes, original, atol=1e-10)
    sim.apply_rzz(st, 0, 3, 0.37)
    sim.apply_rzz(st, 0, 3, -0.37)
    assert np.allclose(st.amplitudes, original, atol=1e-10)


def test_sample_shots_delta_state():
    st = sim.StateVector(3, np.zeros(8, dtype=complex))
    st.amplitudes[5] = 1.0
    rng = np.random.default_rng(0)
    assert np.all(sim.sample_shots(st, 50, rng) == 5)


def test_sample_shots_determinism():
    st = sim.init_plus(4)
    a = sim.sample_shots(st, 100, np.random.default_rng(42))
    b = sim.sample_shots(st, 100, np.random.default_rng(42))
    assert np.array_equal(a, b)


def test_sample_shots_unnormalized_rejected():
    st = sim.StateVector(2, np.array([1.0, 1.0, 0, 0], dtype=complex))
    with pytest.raises(IntegrityError):
        sim.sample_shots(st, 1, np.random.default_rng(0))
    with pytest.raises(DomainError):
        sim.sample_shots(sim.init_plus(2), 0, np.random.default_rng(0))


def test_born_rule_chi_square():
    rng = np.random.default_rng(10)
    shots = 10**5
    for _ in range(20):
        st = random_state(5, rng)
        draws = sim.sample_shots(st, shots, rng)
        counts = np.bincount(draws, minlength=32)
        expected = st.probabilities() * shots
        # merge tiny-expectation bins to keep the chi-square applicable
        keep = expected >= 5
        merged_counts = np.append(counts[keep], counts[~keep].sum())
        merged_expected = np.append(expected[keep], expected[~keep].sum())
        if merged_expected[-1] == 0:
            merged_counts, merged_expected = merged_counts[:-1], merged_expected[:-1]
        merged_expected *= merged_counts.sum() / merged_expected.sum()
        _, pvalue = chisquare(merged_counts, merged_expected)
        assert pvalue > 1e-4


def test_uniform_sampling_frequencies():
    rng = np.random.default_rng(11)
    draws = sim.sample_shots(sim.init_plus(4), 10**6, rng)
    freqs = np.bincount(draws, minlength=16) / 10**6
    sigma = math.sqrt((1 / 16) * (15 / 16) / 10**6)
    assert np.all(np.abs(freqs - 1 / 16) < 4 * sigma)


def test_expectation_diagonal():
    table = ising.energy_table(ising.make_ferromagnetic(4))
    st = sim.init_zero(4)
    assert sim.expectation_diagonal(st, table) == pytest.approx(table[0])
    st = sim.init_plus(4)
    assert sim.expectation_diagonal(st, table) == pytest.approx(table.mean())


def test_expectation_matches_sampled_mean():
    rng = np.random.default_rng(12)
    inst = ising.make_ferromagnetic(6)
    table = ising.energy_table(inst)
    st = random_state(6, rng)
    exact = sim.expectation_diagonal(st, table)
    draws = sim.sample_shots(st, 10**6, rng)
    energies = table[draws]
    stderr = energies.std() / 1000.0
    assert abs(energies.mean() - exact) < 4 * stderr


# --- noise channel -----------------------------------------------------------


def test_noise_model_validation():
    with pytest.raises(DomainError):
        sim.NoiseModel(t1_us=50.0, t2_us=120.0)
    with pytest.raises(DomainError):
        sim.NoiseModel(t1_us=-1.0, t2_us=1.0)
    model = sim.NoiseModel(t1_us=50.0, t2_us=70.0)
    assert sim.NoiseModel.from_json(model.to_json()) == model


def test_zero_noise_limit_matches_ideal_gate():
    quiet = sim.NoiseModel(t1_us=math.inf, t2_us=math.inf)
    rng = np.random.default_rng(13)
    st_noisy = random_state(3, rng)
    st_ideal = st_noisy.copy()
    op = sim.GateOp("ry", (1,), 0.8)
    sim.apply_noisy_gate(st_noisy, op, quiet, rng)
    sim.apply_gate(st_ideal, op)
    assert np.allclose(st_noisy.amplitudes, st_ideal.amplitudes, atol=1e-12)


def test_unknown_gate_rejected():
    with pytest.raises(DomainError):
        sim.apply_gate(sim.init_zero(1), sim.GateOp("h", (0,)))


def _trajectory_population(model, idle_ns, chunks, trials, seed):
    rng = np.random.default_rng(seed)
    stay = 0
    for _ in range(trials):
        st = sim.init_zero(1)
        sim.apply_ry(st, 0, math.pi)  # |1>
        for _ in range(chunks):
            sim.apply_noisy_gate(
                st, sim.GateOp("idle", (0,), duration_ns=idle_ns / chunks), model, rng
            )
        stay += st.probabilities()[1]
    return stay / trials


def test_amplitude_damping_decay_quick():
    model = sim.NoiseModel(t1_us=50.0, t2_us=70.0)
    idle_ns = 40_000.0  # 0.8 T1
    population = _trajectory_population(model, idle_ns, chunks=4, trials=2000, seed=14)
    assert population == pytest.approx(math.exp(-0.8), rel=0.10)


def test_dephasing_decay_quick():
    model = sim.NoiseModel(t1_us=50.0, t2_us=70.0)
    idle_ns = 35_000.0  # 0.5 T2
    rng = np.random.default_rng(15)
    coherence = 0.0
    trials = 2000
    for _ in range(trials):
        st = sim.init_plus(1)
        for _ in range(4):
            sim.apply_noisy_gate(
                st, sim.GateOp("idle", (0,), duration_ns=idle_ns / 4), model, rng
            )
        coherence += (st.amplitudes[0] * st.amplitudes[1].conjugate()).real
    coherence /= trials * 0.5  # |+| coherence starts at 1/2
    assert coherence == pytest.approx(math.exp(-0.5), rel=0.10)
