"""Gate-set tomography: experiment designs, dataset simulation, estimation,
gauge optimization, and diamond-distance evaluation."""

from .design import GSTExperimentDesign, extended_design, standard_design
from .diamond import (
    DIAMOND_CONVENTION,
    choi_from_ptm,
    diamond_distance,
    project_to_cp,
    unitary_pair_diamond_distance,
)
from .estimate import FitLog, lgst, mle_refine
from .gatesets import ErrorModel, GateSet, apply_error_model, gate_unitary, ideal_gateset
from .gauge import GaugeTransform, gauge_optimize
from .pipeline import GSTReport, run_gst_pipeline
from .simulate import GSTDataset, forward_probabilities, simulate_dataset

__all__ = [
    "DIAMOND_CONVENTION",
    "GSTExperimentDesign",
    "GSTDataset",
    "GSTReport",
    "GateSet",
    "ErrorModel",
    "FitLog",
    "GaugeTransform",
    "apply_error_model",
    "choi_from_ptm",
    "diamond_distance",
    "extended_design",
    "forward_probabilities",
    "gate_unitary",
    "gauge_optimize",
    "ideal_gateset",
    "lgst",
    "mle_refine",
    "project_to_cp",
    "run_gst_pipeline",
    "simulate_dataset",
    "standard_design",
    "unitary_pair_diamond_distance",
]
