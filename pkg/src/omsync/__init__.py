"""Noise-driven synchronization of two coupled optomechanical oscillators."""

__version__ = "0.1.0"

from .params import (
    CrossoverPoint,
    DimerParams,
    OmParams,
    ParameterError,
    QuantumScale,
    crossover_point,
    detune,
    make_identical_dimer,
)
from .langevin import (
    ConfigError,
    NoiseSpec,
    SemiclassicalState,
    StiffnessError,
    ThresholdScan,
    Trajectory,
    drift,
    load_trajectory_csv,
    mechanical_ac_energy,
    photon_number,
    save_trajectory_csv,
    selfosc_threshold_scan,
    simulate,
    step,
)

__all__ = [
    "__version__",
    "CrossoverPoint",
    "DimerParams",
    "OmParams",
    "ParameterError",
    "QuantumScale",
    "crossover_point",
    "detune",
    "make_identical_dimer",
    "ConfigError",
    "NoiseSpec",
    "SemiclassicalState",
    "StiffnessError",
    "ThresholdScan",
    "Trajectory",
    "drift",
    "load_trajectory_csv",
    "mechanical_ac_energy",
    "photon_number",
    "save_trajectory_csv",
    "selfosc_threshold_scan",
    "simulate",
    "step",
]
