"""Dissipative three-level dynamics under a Zeno-type control coupling.

A numpy/scipy toolkit for the reduced dynamics of an excited level decaying
through a Lorentzian bath while its ground level is coherently coupled to a
metastable level: closed-form survival amplitudes via residues, bath-mode
moments by incremental quadrature, reduced-channel assembly, trace-distance
information flow, the BLP non-Markovianity measure over sampled Bloch
directions, and an independent mode-resolved integrator for validation.
"""

from .amplitudes import (
    AmplitudeSet,
    CubicRoots,
    DegenerateRoots,
    amplitudes_at,
    green_function,
    lower_amplitudes,
    solve_cubic,
    survival_amplitude,
)
from .bath import (
    BathMoments,
    BathMomentsTable,
    GridTooCoarse,
    OverflowRiskWarning,
    bath_moments_bruteforce,
    bath_moments_fast,
)
from .blp import BlpResult, accumulate_increases, blp_measure, blp_sweep, sample_directions
from .channel import (
    ChannelCoefficients,
    DensityMatrix3,
    InvalidInitialState,
    as_direction,
    channel_coefficients,
    evolve_state,
    hermitian_eigenvalues_3x3,
    trace_distance,
    trace_distance_trajectory,
)
from .config import ConfigError, ScenarioConfig, build_config, parse_config_file
from .model import (
    CavityRegime,
    ModelParams,
    TimeGrid,
    dressed_kernel,
    lorentzian_density,
    memory_kernel,
)
from .oracle import (
    DiscretizedBath,
    FullState,
    NormDrift,
    OracleTrajectory,
    WindowTooNarrow,
    discretize_bath,
    initial_full_state,
    integrate_full,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeSet",
    "BathMoments",
    "BathMomentsTable",
    "BlpResult",
    "CavityRegime",
    "ChannelCoefficients",
    "ConfigError",
    "CubicRoots",
    "DegenerateRoots",
    "DensityMatrix3",
    "DiscretizedBath",
    "FullState",
    "GridTooCoarse",
    "InvalidInitialState",
    "ModelParams",
    "NormDrift",
    "OracleTrajectory",
    "OverflowRiskWarning",
    "ScenarioConfig",
    "TimeGrid",
    "WindowTooNarrow",
    "accumulate_increases",
    "amplitudes_at",
    "as_direction",
    "bath_moments_bruteforce",
    "bath_moments_fast",
    "blp_measure",
    "blp_sweep",
    "build_config",
    "channel_coefficients",
    "discretize_bath",
    "dressed_kernel",
    "evolve_state",
    "green_function",
    "hermitian_eigenvalues_3x3",
    "initial_full_state",
    "integrate_full",
    "lorentzian_density",
    "lower_amplitudes",
    "memory_kernel",
    "parse_config_file",
    "sample_directions",
    "solve_cubic",
    "survival_amplitude",
    "trace_distance",
    "trace_distance_trajectory",
]
