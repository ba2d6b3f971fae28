"""Correctness/security checkers and the lower-bound arithmetic."""

import json
import math

import numpy as np
import pytest

from iqphe import (
    DensityMatrix,
    IqpCircuit,
    QpirBoundInput,
    SchemeParams,
    amplify_weak_to_strong,
    binary_entropy,
    check_correctness,
    check_weak_security,
    collision_bound,
    cz_gate,
    qpir_lower_bound,
    qpir_reduction_audit,
    t_gate,
)
from iqphe import states
from iqphe.errors import EnumerationCapError
from iqphe.verify import full_pad_twirl
from conftest import letters_matrix


class TestCorrectness:
    def test_empty_circuit_residual_zero(self, rng):
        params = SchemeParams(kappa=8, max_qubits=2)
        rho = states.random_xy_product(2, rng)
        rep = check_correctness(params, IqpCircuit(2, (), ()), rho, trials=5, seed=3)
        assert rep.value <= 1e-12
        assert rep.passed

    def test_t_cz_over_100_keys(self, rng):
        params = SchemeParams(kappa=8, max_qubits=2)
        circuit = IqpCircuit(2, (t_gate(0), cz_gate(0, 1)), (0, 1))
        rep = check_correctness(
            params, circuit, states.plus_state(2), trials=100, seed=5
        )
        assert rep.value <= 1e-9
        assert rep.details["max_bit_total_variation"] <= 1e-9
        assert rep.trials == 100

    def test_report_is_reproducible_and_serializable(self, rng):
        params = SchemeParams(kappa=8, max_qubits=2)
        circuit = IqpCircuit(2, (cz_gate(0, 1),), (1,))
        rho = states.random_xy_product(2, rng)
        r1 = check_correctness(params, circuit, rho, trials=3, seed=9)
        r2 = check_correctness(params, circuit, rho, trials=3, seed=9)
        assert r1 == r2
        parsed = json.loads(r1.to_json())
        assert parsed["check"] == "correctness"
        assert parsed["params"]["kappa"] == 8


def xy_pair(rng, n=2):
    return states.random_xy_state(n, rng), states.random_xy_state(n, rng)


class TestWeakSecurityExact:
    def test_equal_inputs_distance_zero(self, rng):
        params = SchemeParams(kappa=3, max_qubits=2, k=3)
        rho = states.random_xy_state(2, rng)
        rep = check_weak_security(params, rho, rho, mode="exact")
        assert rep.value <= 1e-12

    def test_xy_pairs_hide_up_to_collisions(self, rng):
        params = SchemeParams(kappa=3, max_qubits=2, k=3)
        bound = collision_bound(params)
        for _ in range(5):
            a, b = xy_pair(rng)
            rep = check_weak_security(params, a, b, mode="exact")
            assert rep.details["distance_given_distinct_r"] <= 1e-9
            assert rep.value <= bound + 1e-9
            assert rep.passed

    def test_single_qubit_zero_vs_one_leaks_fully(self):
        # Outside the equator space the pad hides nothing: the averaged
        # ciphertexts stay |0><0| and |1><1|, distance 1.
        params = SchemeParams(kappa=3, max_qubits=1, k=3)
        rep = check_weak_security(
            params, states.basis_state([0]), states.basis_state([1]), mode="exact"
        )
        assert rep.value == pytest.approx(1.0, abs=1e-12)
        assert not rep.passed

    def test_zero_vs_plus_leaks_half(self):
        params = SchemeParams(kappa=3, max_qubits=1, k=3)
        rep = check_weak_security(
            params, states.basis_state([0]), states.plus_state(1), mode="exact"
        )
        assert rep.value == pytest.approx(0.5, abs=1e-12)

    def test_bloch_oracle_for_single_qubit_pairs(self, rng):
        # For one qubit the ensemble distance is |r3 - r3'| / 2.
        from iqphe import bloch_vector

        params = SchemeParams(kappa=2, max_qubits=1, k=2)
        for _ in range(5):
            a, b = states.random_single_qubit(rng), states.random_single_qubit(rng)
            rep = check_weak_security(params, a, b, mode="exact")
            want = abs(bloch_vector(a).r3 - bloch_vector(b).r3) / 2
            assert rep.value == pytest.approx(want, abs=1e-12)

    def test_collision_leak_on_correlated_pair(self):
        # (II + XX)/4 vs (II - XX)/4: identical under independent pads,
        # distance 1 under collided pads, so the exact ensemble distance is
        # exactly the collision probability 2^-kappa.
        xx = letters_matrix("XX")
        rho_a = DensityMatrix((np.eye(4) + xx) / 4)
        rho_b = DensityMatrix((np.eye(4) - xx) / 4)
        for kappa in (2, 3):
            params = SchemeParams(kappa=kappa, max_qubits=2, k=2)
            rep = check_weak_security(params, rho_a, rho_b, mode="exact")
            assert rep.value == pytest.approx(2.0**-kappa, abs=1e-12)
            assert rep.value > 0
            assert rep.details["distance_given_distinct_r"] <= 1e-12
            assert rep.witness["worst_block_distance"] == pytest.approx(1.0, abs=1e-12)

    def test_enumeration_caps(self, rng):
        with pytest.raises(EnumerationCapError):
            check_weak_security(
                SchemeParams(kappa=12, max_qubits=2),
                *xy_pair(rng),
                mode="exact",
            )

    def test_mismatched_sizes(self, rng):
        params = SchemeParams(kappa=3, max_qubits=2, k=3)
        with pytest.raises(ValueError):
            check_weak_security(params, states.plus_state(1), states.plus_state(2))


class TestWeakSecurityBound:
    def test_bound_dominates_exact(self, rng):
        params = SchemeParams(kappa=3, max_qubits=2, k=3)
        for _ in range(3):
            a, b = xy_pair(rng)
            exact = check_weak_security(params, a, b, mode="exact")
            bound = check_weak_security(params, a, b, mode="bound")
            assert bound.value + 1e-12 >= exact.value

    def test_bound_mode_feasible_at_large_kappa(self, rng):
        params = SchemeParams(kappa=16, max_qubits=2, k=16)
        a, b = xy_pair(rng)
        rep = check_weak_security(params, a, b, mode="bound")
        assert rep.value <= collision_bound(params) + 1e-9

    def test_twirl_of_xy_state_is_maximally_mixed(self, rng):
        rho = states.random_xy_state(2, rng)
        assert np.allclose(full_pad_twirl(rho), np.eye(4) / 4, atol=1e-12)

    def test_unknown_mode(self, rng):
        params = SchemeParams(kappa=3, max_qubits=2, k=3)
        with pytest.raises(ValueError, match="mode"):
            check_weak_security(params, *xy_pair(rng), mode="sampled")


class TestCollisionBound:
    def test_examples(self):
        assert collision_bound(SchemeParams(kappa=3, max_qubits=1, k=3)) == 0.0
        assert collision_bound(SchemeParams(kappa=3, max_qubits=2, k=3)) == 0.125
        assert collision_bound(SchemeParams(kappa=10, max_qubits=4, k=10)) == 6 / 1024


class TestAmplification:
    def test_examples(self):
        assert amplify_weak_to_strong(0.0, 5) == 0.0
        assert amplify_weak_to_strong(0.01, 1) == pytest.approx(0.08)
        assert amplify_weak_to_strong(2.0**-40, 10) == 2.0**-19

    def test_clamps_at_one(self):
        assert amplify_weak_to_strong(0.5, 4) == 1.0

    def test_monotone(self):
        values = [amplify_weak_to_strong(e, 3) for e in (0.0, 1e-6, 1e-4, 1e-2)]
        assert values == sorted(values)
        values_n = [amplify_weak_to_strong(1e-9, n) for n in range(1, 12)]
        assert values_n == sorted(values_n)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            amplify_weak_to_strong(1.5, 2)
        with pytest.raises(ValueError):
            amplify_weak_to_strong(0.1, 0)


class TestBinaryEntropy:
    def test_examples(self):
        assert binary_entropy(0.5) == 1.0
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        # High-precision reference value (40-digit evaluation).
        assert binary_entropy(0.9799) == pytest.approx(0.1420016460911572, abs=1e-15)

    def test_symmetric_and_concave_on_grid(self):
        grid = np.linspace(0.0, 1.0, 101)
        vals = [binary_entropy(p) for p in grid]
        for p, v in zip(grid, vals):
            assert v == pytest.approx(binary_entropy(1.0 - p), abs=1e-12)
        mids = [
            binary_entropy((grid[i] + grid[i + 2]) / 2) for i in range(len(grid) - 2)
        ]
        for i, mid in enumerate(mids):
            assert mid >= (vals[i] + vals[i + 2]) / 2 - 1e-12

    def test_domain(self):
        with pytest.raises(ValueError):
            binary_entropy(-0.1)
        with pytest.raises(ValueError):
            binary_entropy(1.1)


class TestQpirBound:
    def test_perfect_protocol_needs_full_database(self):
        assert qpir_lower_bound(QpirBoundInput(137, 0.0, 0.0)) == 137.0

    def test_paper_regime(self):
        inp = QpirBoundInput(10000, 0.0001, 0.0001)
        assert inp.entropy_argument == pytest.approx(0.9799010000250012, abs=1e-15)
        h = binary_entropy(inp.entropy_argument)
        assert h == pytest.approx(0.1419960385472181, abs=1e-14)
        assert h < 0.2
        coeff = 1.0 - h
        assert 0.8 <= coeff <= 0.87
        assert qpir_lower_bound(inp) == pytest.approx(8580.03961452782, abs=1e-8)
        assert qpir_lower_bound(inp) >= 8000

    def test_random_guessing_is_free(self):
        assert qpir_lower_bound(QpirBoundInput(500, 0.5, 0.0)) == pytest.approx(0.0)

    def test_monotone_in_errors(self):
        # Monotone on the regime where the entropy argument stays >= 1/2;
        # past that H(.) turns around and the formula loses its force.
        n = 1000
        deltas = np.linspace(0.0, 0.4, 9)
        bounds = [qpir_lower_bound(QpirBoundInput(n, d, 0.001)) for d in deltas]
        assert all(b1 >= b2 - 1e-9 for b1, b2 in zip(bounds, bounds[1:]))
        epss = np.linspace(0.0, 0.06, 9)
        bounds_e = [qpir_lower_bound(QpirBoundInput(n, 0.001, e)) for e in epss]
        assert all(b1 >= b2 - 1e-9 for b1, b2 in zip(bounds_e, bounds_e[1:]))

    def test_input_validation(self):
        with pytest.raises(ValueError):
            QpirBoundInput(0, 0.1, 0.1)
        with pytest.raises(ValueError):
            QpirBoundInput(10, 0.6, 0.0)
        with pytest.raises(ValueError):
            QpirBoundInput(10, -0.1, 0.0)


class TestReductionAudit:
    def test_p_ten(self):
        audit = qpir_reduction_audit(10, 0.0001, 0.0001)
        assert audit.n == 10000
        assert audit.communicated == pytest.approx(142.8771237954945, abs=1e-9)
        assert audit.lower_bound == pytest.approx(8580.03961452782, abs=1e-8)
        assert audit.contradiction

    def test_p_one(self):
        audit = qpir_reduction_audit(1, 0.0001, 0.0001)
        assert audit.n == 100
        assert audit.communicated == pytest.approx(7.643856189774724, abs=1e-12)
        assert audit.contradiction

    def test_half_delta_no_contradiction(self):
        audit = qpir_reduction_audit(7, 0.5, 0.0)
        assert audit.lower_bound == pytest.approx(0.0, abs=1e-9)
        assert not audit.contradiction

    def test_contradiction_for_all_small_p(self):
        for p in range(1, 65):
            assert qpir_reduction_audit(p, 0.0001, 0.0001).contradiction

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            qpir_reduction_audit(0, 0.0001, 0.0001)

    def test_to_dict(self):
        d = qpir_reduction_audit(2, 0.0001, 0.0001).to_dict()
        assert set(d) >= {"p", "n", "communicated", "lower_bound", "contradiction"}
        json.dumps(d)
