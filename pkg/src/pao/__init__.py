"""Particle attractor optimisation: a swarm optimiser whose particles are
damped stochastic oscillators advanced by their exact Gaussian transition
kernel, plus PSO/QPSO/DE/SADE baselines and a benchmark harness."""

from .attractors import (
    AttractorSet,
    AttractorSpec,
    VALID_KINDS,
    compute_attractors,
    noise_scale,
    weighted_centroid,
)
from .baselines import (
    DeConfig,
    OPTIMIZER_IDS,
    PsoConfig,
    QpsoConfig,
    SadeConfig,
    run_de,
    run_pso,
    run_qpso,
    run_sade,
)
from .benchmarks import PROBLEM_NAMES, Problem, make_problem, shift_to_zero
from .engine import (
    PaoConfig,
    Swarm,
    initialize_swarm,
    run_pao,
    step_swarm,
)
from .harness import (
    BenchmarkSuite,
    aggregate_convergence,
    derive_seed,
    emit_plot_data,
    run_one,
    run_suite,
    standard_suite,
    summarize,
)
from .kernel import (
    DegenerateCovariance,
    Hyperparams,
    NumericalFailure,
    TransitionKernel,
    build_drift_matrix,
    build_kernel,
    matrix_exponential,
    matrix_fraction_decomposition,
    psd_cholesky,
    sample_transition,
    transition_logpdf,
)
from .records import RunRecord, read_jsonl, write_jsonl

__version__ = "0.1.0"

__all__ = [
    "AttractorSet",
    "AttractorSpec",
    "BenchmarkSuite",
    "DeConfig",
    "DegenerateCovariance",
    "Hyperparams",
    "NumericalFailure",
    "OPTIMIZER_IDS",
    "PROBLEM_NAMES",
    "PaoConfig",
    "Problem",
    "PsoConfig",
    "QpsoConfig",
    "RunRecord",
    "SadeConfig",
    "Swarm",
    "TransitionKernel",
    "VALID_KINDS",
    "aggregate_convergence",
    "build_drift_matrix",
    "build_kernel",
    "compute_attractors",
    "derive_seed",
    "emit_plot_data",
    "initialize_swarm",
    "make_problem",
    "matrix_exponential",
    "matrix_fraction_decomposition",
    "noise_scale",
    "psd_cholesky",
    "read_jsonl",
    "run_de",
    "run_one",
    "run_pao",
    "run_pso",
    "run_qpso",
    "run_sade",
    "run_suite",
    "sample_transition",
    "shift_to_zero",
    "standard_suite",
    "step_swarm",
    "summarize",
    "transition_logpdf",
    "weighted_centroid",
    "write_jsonl",
]
