"""noisewalk: quantum-verification protocols under temporally correlated noise.

Simulates randomized benchmarking and gate-set tomography on a single
qubit with engineered detuning noise in the quasi-DC and white limits,
analyzes sequences through their Pauli-space error walks, and evaluates
gate-set estimates through gauge-optimization-sensitive diamond distances.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .cliffords import (
    CliffordElement,
    CliffordGroup,
    PhysicalPulse,
    build_clifford_group,
    compose,
    inverse_of_product,
    noisy_pulse_unitary,
    sequence_unitary,
)
from .noise import (
    NoiseEnsemble,
    NoiseRealization,
    NoiseSpec,
    derive_rng,
    ensemble_rms,
    sample_ensemble,
)
from .pauli import SignedPauli, conjugate_pauli, unitary_to_ptm
from .rb import (
    RBConfig,
    RBDataset,
    RBSequence,
    analytic_gamma_params,
    fit_decay,
    fit_gamma,
    generate_rb_sequence,
    moments_prediction,
    run_rb,
    simulate_survival,
)
from .walks import (
    LongWalkLabel,
    WalkRecord,
    classify_long_walk,
    compute_walk,
    predicted_dc_infidelity,
    preselect_long_walk_sequences,
)

__all__ = [
    "KERNEL_BACKEND",
    "CliffordElement",
    "CliffordGroup",
    "PhysicalPulse",
    "SignedPauli",
    "NoiseSpec",
    "NoiseRealization",
    "NoiseEnsemble",
    "WalkRecord",
    "LongWalkLabel",
    "RBConfig",
    "RBDataset",
    "RBSequence",
    "build_clifford_group",
    "compose",
    "inverse_of_product",
    "noisy_pulse_unitary",
    "sequence_unitary",
    "conjugate_pauli",
    "unitary_to_ptm",
    "derive_rng",
    "sample_ensemble",
    "ensemble_rms",
    "compute_walk",
    "classify_long_walk",
    "preselect_long_walk_sequences",
    "predicted_dc_infidelity",
    "generate_rb_sequence",
    "simulate_survival",
    "run_rb",
    "fit_decay",
    "fit_gamma",
    "analytic_gamma_params",
    "moments_prediction",
    "__version__",
]
