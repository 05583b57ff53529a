"""robustwork: resource robustness as a thermodynamic currency.

Certified generalized-robustness SDPs over finitely generated free sets
(incoherent states, stabilizer states, custom hulls), the witness-Hamiltonian
work-extraction protocol, and numerical verification of the advantage and
cost bounds that tie the two together.
"""

from .linalg import (
    INF_BETA,
    NumericPolicy,
    gibbs_state,
    hermitian_eig,
    maximally_mixed,
    partial_trace,
    policy,
    projector,
    tensor,
    tensor_power,
    trace_inner,
    transpose,
    von_neumann_entropy,
)
from .states import basis_state, golden_state, maximally_entangled_state, t_state
from .freesets import (
    FreeSet,
    enumerate_stabilizer_states,
    finite_hull,
    incoherent_extreme_points,
    incoherent_set,
    membership,
    stabilizer_set,
    stabilizer_state_count,
)
from .solver import (
    RobustnessResult,
    Rank1NotTightError,
    InfeasibleHullError,
    pure_coherence_witness,
    rank1_witness_from_pure,
    robustness_dual,
    robustness_primal,
    robustness_pure_coherence,
    single_qubit_magic_witness,
    tstate_magic_robustness,
    tstate_magic_witness,
    witness_is_feasible,
)
from .thermo import (
    BoundReport,
    ProtocolTrace,
    ThermoContext,
    corollary1_bound,
    extractable_work,
    free_energy,
    max_free_extractable_work,
    residual_thermal_closed_form,
    simulate_protocol,
    theorem1_bound,
    verify_eq10_ratio,
    verify_theorem1,
    verify_theorem2,
    verify_xi_cost,
    work_cost,
)
from .channels import (
    ChoiState,
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
from .scenarios import Scenario, load_scenario, run_scenario, sweep, sweep_to_csv

__version__ = "0.1.0"
