"""Exact simulator and analysis toolkit for the noisy three-player quantum dilemma game."""

from .analysis import (
    EquilibriumReport,
    StrategyClass,
    SweepRecord,
    classical_ne_payoff,
    critical_corruption,
    dominance,
    enumerate_classes,
    label_classes,
    quantum_ne_payoff,
    simulated_class_mean,
    sweep,
)
from .game import (
    DEFAULT_GAMMA,
    GateStep,
    PayoffTable,
    PayoffVector,
    Strategy,
    compose,
    decompose_entangler,
    disentangler,
    entangler,
    evolve,
    general_unitary,
    global_phase_distance,
    mean_payoff,
    parse_profile,
    payoff,
    play,
    strategy_unitary,
)
from .linalg import (
    basis_density,
    basis_state,
    conjugate_by,
    dagger,
    herm_sqrt,
    kron,
    partial_trace_last,
    validate_density_matrix,
)
from .noise import ancilla_prepare, corrupted_input, theta_for_x
from .tomography import (
    estimate_expectations,
    expectations,
    fidelity,
    load_reference_state,
    project_to_physical,
    reconstruct,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_GAMMA",
    "EquilibriumReport",
    "GateStep",
    "PayoffTable",
    "PayoffVector",
    "Strategy",
    "StrategyClass",
    "SweepRecord",
    "ancilla_prepare",
    "basis_density",
    "basis_state",
    "classical_ne_payoff",
    "compose",
    "conjugate_by",
    "corrupted_input",
    "critical_corruption",
    "dagger",
    "decompose_entangler",
    "disentangler",
    "dominance",
    "entangler",
    "enumerate_classes",
    "estimate_expectations",
    "evolve",
    "expectations",
    "fidelity",
    "general_unitary",
    "global_phase_distance",
    "herm_sqrt",
    "kron",
    "label_classes",
    "load_reference_state",
    "mean_payoff",
    "parse_profile",
    "partial_trace_last",
    "payoff",
    "play",
    "project_to_physical",
    "quantum_ne_payoff",
    "reconstruct",
    "simulated_class_mean",
    "strategy_unitary",
    "sweep",
    "theta_for_x",
    "validate_density_matrix",
]
