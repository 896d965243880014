"""Two-qubit delayed-choice quantum eraser: simulation and complementarity analysis."""

from .analysis import (
    QuantifierSet,
    TrialityTriple,
    average_quantifiers,
    contrast_total,
    distinguishability_total,
    quantify,
    subensemble_from_amplitudes,
    subensemble_quantifiers,
    theoretical_quantifiers,
    triality,
    visibility_from_sweep,
)
from .circuit import (
    CircuitConfig,
    JointDistribution,
    SliceStates,
    build_slices,
    exact_joint,
    joint_grid,
    noisy_final_dm,
)
from .noise import PRESETS, NoiseModel, load_preset
from .qcore import DensityMatrix, KrausChannel, TwoQubitState
from .randmeas import PurityEstimate, RandMeasPlan, estimate_purity
from .sampling import (
    EnsembleCounts,
    SweepRecord,
    empirical_joint,
    sample_shots,
    theta_sweep,
)

__version__ = "0.1.0"
