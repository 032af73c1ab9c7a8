"""Learning k-th roots of NOT with quantum and classical machines."""

from ._rootnot import (
    AggregateCurve,
    ConfigError,
    EulerAngles,
    ExperimentConfig,
    ExperimentResult,
    MeritSeries,
    classical_merit,
    classical_merit_mc,
    count_target_functions,
    eq4_fraction,
    euler_to_unitary,
    exact_root_angles,
    exact_root_unitary,
    haar_random_angles,
    is_perfect_root,
    lemma_scan,
    parse_config,
    perfect_loop_machine,
    preset_fig2,
    preset_fig3,
    preset_fig4,
    quantum_merit,
    quantum_merits,
    run_experiment,
    run_single_seed,
    uniform_machine,
    unitary_power,
)

__all__ = [name for name in dir() if not name.startswith("_")]
