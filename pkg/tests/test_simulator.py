"""Strided gate kernels against dense Kronecker oracles, measurement semantics, program JSON."""
from __future__ import annotations

import numpy as np
import pytest

from abelianfft import (
    Gate,
    Program,
    QState,
    apply_1q,
    apply_2q,
    basis_state,
    cnot,
    collapse_register,
    cphase,
    hadamard,
    measure_qubit_distribution,
    new_state,
    pauli_x,
    program_from_json,
    program_to_json,
    run_program,
    sample,
    swap_gate,
)
from abelianfft.simulator import STATE_CAP

from testutil import one_qubit_dense, random_unitary, two_qubit_dense


def _random_state(n, rng):
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return QState(n, amps / np.linalg.norm(amps))


def test_frozen_gate_matrices():
    h = hadamard(0).matrix
    assert np.allclose(h, np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)
    assert np.allclose(pauli_x(0).matrix, [[0, 1], [1, 0]], atol=0)
    want_cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    assert np.allclose(cnot(1, 0).matrix, want_cnot, atol=0)
    want_swap = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert np.allclose(swap_gate(0, 1).matrix, want_swap, atol=0)
    cz = cphase(0, 1, 1).matrix
    assert np.allclose(cz, np.diag([1, 1, 1, -1]), atol=1e-15)
    cs = cphase(0, 1, 2).matrix
    assert np.allclose(cs, np.diag([1, 1, 1, 1j]), atol=1e-15)


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate(np.array([[1, 1], [0, 1]]), (0,))  # not unitary
    with pytest.raises(ValueError):
        Gate(np.eye(3), (0,))  # bad shape
    with pytest.raises(ValueError):
        Gate(np.eye(4), (1, 1))  # repeated targets
    with pytest.raises(ValueError):
        Gate(np.eye(2), (0, 1))  # arity mismatch
    with pytest.raises(ValueError):
        cphase(0, 1, 0)
    with pytest.raises(ValueError):
        cphase(0, 1, exponent=-2)


def test_state_validation():
    with pytest.raises(ValueError):
        QState(1, np.array([1.0, 1.0]))  # norm sqrt(2)
    with pytest.raises(ValueError):
        QState(2, np.array([1.0, 0.0]))  # wrong length
    with pytest.raises(ValueError):
        new_state(0)
    with pytest.raises(ValueError):
        new_state(STATE_CAP + 1)
    with pytest.raises(ValueError):
        basis_state(2, 4)


def test_new_and_basis_state():
    s = new_state(3)
    assert s.amps[0] == 1.0 and np.count_nonzero(s.amps) == 1
    b = basis_state(3, 5)
    assert b.amps[5] == 1.0 and np.count_nonzero(b.amps) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_apply_1q_matches_kron_oracle(n):
    rng = np.random.default_rng(10 + n)
    state = _random_state(n, rng)
    for target in range(n):
        u = random_unitary(2, rng)
        got = apply_1q(state, Gate(u, (target,)))
        want = one_qubit_dense(n, u, target) @ state.amps
        assert np.max(np.abs(got.amps - want)) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_apply_2q_matches_dense_oracle(n):
    rng = np.random.default_rng(20 + n)
    state = _random_state(n, rng)
    for hi in range(n):
        for lo in range(n):
            if hi == lo:
                continue
            u = random_unitary(4, rng)
            got = apply_2q(state, Gate(u, (hi, lo)))
            want = two_qubit_dense(n, u, hi, lo) @ state.amps
            assert np.max(np.abs(got.amps - want)) < 1e-12


def test_first_listed_target_is_more_significant():
    # CNOT(control=1, target=0) must flip bit 0 exactly when bit 1 is set
    state = basis_state(2, 0b10)
    out = apply_2q(state, cnot(1, 0))
    assert out.amps[0b11] == pytest.approx(1.0)
    out2 = apply_2q(basis_state(2, 0b01), cnot(1, 0))
    assert out2.amps[0b01] == pytest.approx(1.0)


def test_qubit0_is_least_significant():
    out = apply_1q(new_state(2), pauli_x(0))
    assert out.amps[0b01] == pytest.approx(1.0)
    out = apply_1q(new_state(2), pauli_x(1))
    assert out.amps[0b10] == pytest.approx(1.0)


def test_target_range_checks():
    state = new_state(2)
    with pytest.raises(ValueError):
        apply_1q(state, hadamard(2))
    with pytest.raises(ValueError):
        apply_2q(state, cnot(0, 2))
    with pytest.raises(ValueError):
        apply_1q(state, cnot(0, 1))
    with pytest.raises(ValueError):
        apply_2q(state, hadamard(0))


def test_bell_state_distribution():
    program = Program(2, (hadamard(0), cnot(0, 1)))
    state = run_program(program)
    want = np.zeros(4, dtype=np.complex128)
    want[0b00] = want[0b11] = 1 / np.sqrt(2)
    assert np.max(np.abs(state.amps - want)) < 1e-12
    for q in (0, 1):
        dist = measure_qubit_distribution(state, q)
        assert dist[0] == pytest.approx(0.5, abs=1e-10)
        assert dist[1] == pytest.approx(0.5, abs=1e-10)


def test_program_validation():
    with pytest.raises(ValueError):
        Program(1, (cnot(0, 1),))
    with pytest.raises(ValueError):
        Program(0, ())
    with pytest.raises(ValueError):
        run_program(Program(2, ()), initial=new_state(3))


def test_collapse_register_semantics():
    rng = np.random.default_rng(0)
    program = Program(2, (hadamard(0), cnot(0, 1)))
    state = run_program(program)
    for _ in range(20):
        outcome, post = collapse_register(state, [0, 1], rng)
        assert outcome in ("00", "11")
        idx = int(outcome, 2)
        assert post.amps[idx] == pytest.approx(1.0, abs=1e-12)
        assert np.count_nonzero(np.abs(post.amps) > 1e-12) == 1


def test_collapse_partial_register():
    rng = np.random.default_rng(7)
    state = run_program(Program(2, (hadamard(0), cnot(0, 1))))
    outcome, post = collapse_register(state, [1], rng)
    assert outcome in ("0", "1")
    # after measuring qubit 1 the Bell state leaves qubit 0 equal to the outcome
    dist = measure_qubit_distribution(post, 0)
    assert dist[int(outcome)] == pytest.approx(1.0, abs=1e-10)


def test_collapse_outcome_string_order():
    # qubit 1 high, qubit 0 low regardless of passed order
    state = basis_state(2, 0b10)
    rng = np.random.default_rng(1)
    outcome, _ = collapse_register(state, [0, 1], rng)
    assert outcome == "10"
    outcome, _ = collapse_register(state, [1, 0], rng)
    assert outcome == "10"
    with pytest.raises(ValueError):
        collapse_register(state, [], rng)


def test_collapse_seeded_reproducibility():
    state = run_program(Program(3, (hadamard(0), hadamard(1), hadamard(2))))
    a = [collapse_register(state, [0, 1, 2], np.random.default_rng(99))[0] for _ in range(5)]
    b = [collapse_register(state, [0, 1, 2], np.random.default_rng(99))[0] for _ in range(5)]
    assert a == b


def test_sample_counts():
    state = run_program(Program(2, (hadamard(0), cnot(0, 1))))
    counts = sample(state, 1000, np.random.default_rng(5))
    assert set(counts) <= {"00", "11"}
    assert sum(counts.values()) == 1000
    again = sample(state, 1000, np.random.default_rng(5))
    assert counts == again
    with pytest.raises(ValueError):
        sample(state, 0, np.random.default_rng(5))


def test_sample_only_reports_occurring_outcomes():
    counts = sample(basis_state(2, 3), 50, np.random.default_rng(2))
    assert counts == {"11": 50}


def test_measurement_is_pure_function():
    state = run_program(Program(2, (hadamard(0),)))
    before = state.amps.copy()
    sample(state, 100, np.random.default_rng(3))
    collapse_register(state, [0], np.random.default_rng(3))
    measure_qubit_distribution(state, 0)
    assert np.array_equal(state.amps, before)


def test_program_json_round_trip():
    program = Program(
        3,
        (
            hadamard(2),
            pauli_x(0),
            cnot(0, 1),
            swap_gate(1, 2),
            cphase(0, 2, exponent=3),
            Gate(np.array([[0, 1j], [1j, 0]]), (1,)),
        ),
    )
    obj = program_to_json(program)
    back = program_from_json(obj)
    assert back.n_qubits == 3
    assert len(back.steps) == len(program.steps)
    for got, want in zip(back.steps, program.steps):
        assert got.targets == want.targets
        assert np.max(np.abs(got.matrix - want.matrix)) < 1e-15
    final_a = run_program(program)
    final_b = run_program(back)
    assert np.max(np.abs(final_a.amps - final_b.amps)) < 1e-12


def test_program_from_json_named_gates():
    obj = {
        "n": 2,
        "steps": [
            {"gate": "H", "targets": [0]},
            {"gate": "CNOT", "targets": [0, 1]},
            {"gate": "CPHASE", "targets": [0, 1], "param": 2},
        ],
    }
    program = program_from_json(obj)
    assert [g.name for g in program.steps] == ["H", "CNOT", "CPHASE"]
    assert program.steps[2].param == 2


def test_program_from_json_rejects_garbage():
    with pytest.raises(ValueError):
        program_from_json({"n": 2, "steps": [{"gate": "NOPE", "targets": [0]}]})
    with pytest.raises(ValueError):
        program_from_json({"steps": []})
    with pytest.raises(ValueError):
        program_from_json({"n": 2, "steps": [{"targets": [0]}]})
    with pytest.raises(ValueError):
        program_from_json(
            {"n": 1, "steps": [{"targets": [0], "matrix": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]}]}
        )


def test_gate_sequence_unitarity_preserved():
    rng = np.random.default_rng(31)
    state = _random_state(5, rng)
    for _ in range(30):
        kind = rng.integers(3)
        if kind == 0:
            state = apply_1q(state, Gate(random_unitary(2, rng), (int(rng.integers(5)),)))
        elif kind == 1:
            a, b = rng.permutation(5)[:2]
            state = apply_2q(state, Gate(random_unitary(4, rng), (int(a), int(b))))
        else:
            state = apply_1q(state, hadamard(int(rng.integers(5))))
    assert np.linalg.norm(state.amps) == pytest.approx(1.0, abs=1e-10)
