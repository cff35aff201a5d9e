"""Spin-squeezing simulator and genetic pulse-sequence optimizer."""

from ._spinctrl import (
    GAConfig,
    GAResult,
    GenerationRecord,
    Individual,
    KdeEstimate,
    MeanSpinFrame,
    NoiseParams,
    PhaseField,
    PulseSchedule,
    SphereGrid,
    SpinOperators,
    SummaryStats,
    Trajectory,
    build_spin_operators,
    coherent_spin_state,
    evolve_segment,
    evolve_sequence,
    expectation,
    generation_stats,
    husimi_q,
    kde,
    kde_default_grid,
    mean_spin_frame,
    optimal_phi,
    oracle_evolve_exact,
    run_ga,
    silverman_bandwidth,
    variance,
    wigner_3j,
    wigner_function,
    xi_perp_squared,
    xi_z_squared,
)

__all__ = [
    "GAConfig",
    "GAResult",
    "GenerationRecord",
    "Individual",
    "KdeEstimate",
    "MeanSpinFrame",
    "NoiseParams",
    "PhaseField",
    "PulseSchedule",
    "SphereGrid",
    "SpinOperators",
    "SummaryStats",
    "Trajectory",
    "build_spin_operators",
    "coherent_spin_state",
    "evolve_segment",
    "evolve_sequence",
    "expectation",
    "generation_stats",
    "husimi_q",
    "kde",
    "kde_default_grid",
    "mean_spin_frame",
    "optimal_phi",
    "oracle_evolve_exact",
    "run_ga",
    "silverman_bandwidth",
    "variance",
    "wigner_3j",
    "wigner_function",
    "xi_perp_squared",
    "xi_z_squared",
]
