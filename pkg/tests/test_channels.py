import math

import numpy as np
import pytest

from robustwork.channels import (
    QuantumChannel,
    apply_channel,
    apply_via_choi,
    channel_cost_proxy,
    channel_robustness_lower,
    choi_state,
    depolarizing_channel,
    make_channel,
    theorem3_bound,
    theorem4_bound,
    unitary_channel,
)
from robustwork.freesets import incoherent_set, stabilizer_set
from robustwork.linalg import INF_BETA, maximally_mixed, projector, von_neumann_entropy
from robustwork.solver import tstate_magic_robustness
from robustwork.states import (
    HADAMARD,
    T_GATE,
    basis_state,
    clifford_unitaries_1q,
    golden_state,
    maximally_entangled_state,
    random_density_matrix,
    t_state,
)
from robustwork.thermo import ThermoContext

from conftest import SEEDS
from oracles import random_kraus_channel

rng = np.random.default_rng(SEEDS["channels"])

# computed once from the 60-constraint SDP and frozen; numerically equal to
# the single-qubit T-state magic, consistent with the Choi state being
# Clifford-equivalent to |T> tensor |0>
TGATE_STAB2_LOWER = 0.1715729


class TestChoi:
    def test_identity_channel(self):
        J = choi_state(unitary_channel(np.eye(2)))
        assert np.abs(J.matrix - projector(maximally_entangled_state(2))).max() < 1e-12

    def test_completely_depolarizing(self):
        J = choi_state(depolarizing_channel(2, 1.0))
        assert np.abs(J.matrix - np.eye(4) / 4).max() < 1e-12

    def test_t_gate_choi_is_pure(self):
        J = choi_state(unitary_channel(T_GATE))
        want = np.zeros(4, dtype=complex)
        want[0] = 1 / np.sqrt(2)
        want[3] = np.exp(1j * np.pi / 4) / np.sqrt(2)
        assert np.abs(J.matrix - projector(want)).max() < 1e-12

    def test_unitary_choi_entropy_zero(self):
        for U in (np.eye(2), HADAMARD, T_GATE):
            J = choi_state(unitary_channel(U))
            assert von_neumann_entropy(J.matrix) < 1e-10

    def test_non_trace_preserving_rejected(self):
        with pytest.raises(ValueError):
            QuantumChannel(kraus=(0.5 * np.eye(2),), dim=2)


class TestChannelAction:
    def test_identity_roundtrip(self):
        rho = random_density_matrix(2, rng)
        J = choi_state(unitary_channel(np.eye(2)))
        assert np.abs(apply_via_choi(J, rho) - rho).max() < 1e-12

    def test_t_gate_on_plus(self):
        out = apply_channel(unitary_channel(T_GATE), projector(golden_state(2)))
        assert np.abs(out - projector(t_state(1))).max() < 1e-12

    def test_depolarizing_sends_to_uniform(self):
        for d in (2, 3):
            rho = random_density_matrix(d, rng)
            out = apply_channel(depolarizing_channel(d, 1.0), rho)
            assert np.abs(out - maximally_mixed(d)).max() < 1e-12

    def test_choi_matches_kraus_on_random_channels(self):
        for d in (2, 4):
            for _ in range(10):
                E = make_channel(random_kraus_channel(d, int(rng.integers(1, 4)), rng))
                J = choi_state(E)
                rho = random_density_matrix(d, rng)
                assert np.abs(apply_via_choi(J, rho) - apply_channel(E, rho)).max() < 1e-10

    def test_dimension_mismatch(self):
        J = choi_state(unitary_channel(np.eye(2)))
        with pytest.raises(ValueError):
            apply_via_choi(J, maximally_mixed(3))


class TestChannelRobustness:
    def test_hadamard_is_free(self):
        res = channel_robustness_lower(unitary_channel(HADAMARD), stabilizer_set(2), tol=1e-8)
        assert res.value < 1e-6

    def test_t_gate_regression_value(self):
        res = channel_robustness_lower(unitary_channel(T_GATE), stabilizer_set(2), tol=1e-8)
        assert res.value == pytest.approx(TGATE_STAB2_LOWER, abs=1e-6)

    def test_clifford_conjugation_invariance(self):
        base = channel_robustness_lower(unitary_channel(T_GATE), stabilizer_set(2), tol=1e-8).value
        for C in clifford_unitaries_1q()[:8]:
            E = unitary_channel(C @ T_GATE @ C.conj().T)
            val = channel_robustness_lower(E, stabilizer_set(2), tol=1e-8).value
            assert val == pytest.approx(base, abs=1e-6)

    def test_identity_not_free_for_coherence(self):
        # |Phi> is coherent, so the incoherent relaxation flags the identity:
        # the bipartite free set must match the intended channel theory
        res = channel_robustness_lower(unitary_channel(np.eye(2)), incoherent_set(4), tol=1e-8)
        assert res.value > 0.5

    def test_wrong_dimension_rejected(self):
        with pytest.raises(ValueError):
            channel_robustness_lower(unitary_channel(np.eye(2)), stabilizer_set(1))


class TestCostProxy:
    def test_thermal_choi_costs_nothing(self):
        # the completely depolarizing Choi state is I/d^2, thermal for H = 0
        cost = channel_cost_proxy(depolarizing_channel(2, 1.0), np.zeros((4, 4)), beta=1.3)
        assert cost == pytest.approx(0.0, abs=1e-9)

    def test_t_gate_witness_objective_identity(self):
        res = channel_robustness_lower(unitary_channel(T_GATE), stabilizer_set(2), tol=1e-8)
        lam = 7.0
        cost = channel_cost_proxy(unitary_channel(T_GATE), lam * res.witness, INF_BETA)
        # equals lam * (1 + R_lower) up to lam * (witness ground energy ~ 0)
        assert cost == pytest.approx(lam * (1.0 + res.lower_bound), abs=1e-6)

    def test_identity_channel_flat_hamiltonian(self):
        beta = 2.0
        cost = channel_cost_proxy(unitary_channel(np.eye(2)), np.zeros((4, 4)), beta)
        assert cost == pytest.approx(math.log(4) / beta, abs=1e-9)


class TestTheorem3:
    def test_t_circuit_bound(self):
        E = make_channel([T_GATE @ HADAMARD])
        ctx = ThermoContext(beta=INF_BETA, lam=50.0)
        rep = theorem3_bound(E, projector(basis_state(2, 0)), stabilizer_set(1), ctx)
        assert rep.precondition_met
        assert rep.satisfied
        # zero-entropy output: bound = 1/R
        assert rep.rhs == pytest.approx(1.0 / tstate_magic_robustness(1), abs=1e-4)

    def test_finite_beta(self):
        E = make_channel([T_GATE @ HADAMARD])
        ctx = ThermoContext(beta=1.0, lam=1e4)
        rep = theorem3_bound(E, projector(basis_state(2, 0)), stabilizer_set(1), ctx)
        assert rep.precondition_met and rep.satisfied

    def test_free_channel_flagged(self):
        ctx = ThermoContext(beta=1.0, lam=10.0)
        rep = theorem3_bound(unitary_channel(HADAMARD), projector(basis_state(2, 0)),
                             stabilizer_set(1), ctx)
        assert not rep.precondition_met
        assert "free" in rep.detail["reason"]

    def test_resourceful_input_rejected(self):
        ctx = ThermoContext(beta=1.0, lam=10.0)
        with pytest.raises(ValueError):
            theorem3_bound(unitary_channel(T_GATE), projector(t_state(1)), stabilizer_set(1), ctx)


class TestTheorem4:
    def test_zero_temperature_value(self):
        ctx = ThermoContext(beta=INF_BETA, lam=5.0)
        rep = theorem4_bound(unitary_channel(T_GATE), stabilizer_set(2), ctx)
        assert rep.precondition_met and rep.satisfied
        assert rep.rhs == pytest.approx(1.0 / (1.0 + TGATE_STAB2_LOWER), abs=1e-5)

    def test_large_lambda_beta(self):
        ctx = ThermoContext(beta=1.0, lam=1e4)
        rep = theorem4_bound(unitary_channel(T_GATE), stabilizer_set(2), ctx)
        assert rep.precondition_met and rep.satisfied
        assert rep.lhs <= rep.rhs + 1e-9

    def test_clifford_degenerate(self):
        ctx = ThermoContext(beta=1.0, lam=1e4)
        rep = theorem4_bound(unitary_channel(HADAMARD), stabilizer_set(2), ctx)
        assert not rep.precondition_met
        assert rep.rhs == 1.0
