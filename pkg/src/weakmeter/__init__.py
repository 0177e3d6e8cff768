"""Pointer-measurement simulator for pre- and post-selected two-level systems."""

from .core import (
    SIGMA_Z,
    DichotomicObservable,
    PathAmplitudes,
    Transition,
    TwoLevelState,
    overlap,
    parse_complex,
    path_amplitudes,
    state_from_ratio,
)
from .errors import (
    AcceptanceTooLow,
    BlockedTransition,
    GridTooNarrow,
    InvalidRatio,
    InvalidState,
    NoPostSelectedEvents,
    OrthogonalSelection,
    SingularTarget,
    WeakMeterError,
    WeightsNotNormalized,
    ZeroLambda,
)
from .limits import (
    CouplingConvention,
    CouplingMode,
    WeakValue,
    WeightedAverage,
    anomalous_decomposition,
    convention_mean,
    ratio_product_for_target,
    strong_weights,
    weak_real_from_ratios,
    weak_value,
)
from .pointer import (
    ClassicalNoise,
    GaussianPointer,
    Grid,
    NoiseProfile,
    PointerDistribution,
    conditional_spin_state,
    default_grid,
    distribution_components,
    final_spin_mixture,
    gaussian_profile,
    mean_reading_closed,
    mean_reading_numeric,
    reading_distribution,
    smear,
)

__version__ = "0.1.0"
