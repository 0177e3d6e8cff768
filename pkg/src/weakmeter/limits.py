"""Strong and weak limits of the pointer mean, written as weighted averages.

A weighted average over eigenvalues is *normal* when it lies in the closed
interval spanned by those eigenvalues and *anomalous* otherwise; the latter
needs at least one negative weight.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import SIGMA_Z, DichotomicObservable, PathAmplitudes, Transition
from .errors import BlockedTransition, OrthogonalSelection, SingularTarget, WeightsNotNormalized
from .pointer import GaussianPointer, mean_reading_closed

ORTHOGONAL_TOL = 1e-12
STRONG_BLOCKED = 1e-24


@dataclass(frozen=True, eq=False)
class WeightedAverage:
    weights: np.ndarray
    values: np.ndarray
    mean: float

    @property
    def anomalous(self) -> bool:
        return not (self.values[-1] <= self.mean <= self.values[0])

    def to_dict(self) -> dict:
        return {
            "weights": [float(w) for w in self.weights],
            "values": [float(v) for v in self.values],
            "mean": float(self.mean),
            "anomalous": self.anomalous,
        }


@dataclass(frozen=True)
class WeakValue:
    value: complex
    weights: tuple[float, float]
    s1: float = 1.0
    s2: float = -1.0

    @property
    def anomalous(self) -> bool:
        return not (self.s2 <= self.value.real <= self.s1)

    def to_dict(self) -> dict:
        return {
            "re": self.value.real,
            "im": self.value.imag,
            "weights": list(self.weights),
            "anomalous": self.anomalous,
        }


class CouplingMode(enum.Enum):
    REDUCE_STRENGTH = "reduce-strength"
    RESCALE_POINTER = "rescale-pointer"
    RESCALE_OPERATOR = "rescale-operator"


@dataclass(frozen=True)
class CouplingConvention:
    mode: CouplingMode
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "mode", CouplingMode(self.mode))
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"coupling parameter must be positive and finite, got {self.lam!r}")


def anomalous_decomposition(values, weights) -> WeightedAverage:
    """Build ``sum_n s_n P_n`` and classify it.

    ``values`` must be strictly decreasing and ``weights`` must sum to one
    (within 1e-9); the weights may be negative.
    """
    values = np.asarray(values, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if values.shape != weights.shape or values.ndim != 1 or values.size == 0:
        raise ValueError("values and weights must be equal-length 1-D sequences")
    if np.any(np.diff(values) >= 0):
        raise ValueError("values must be strictly decreasing")
    total = math.fsum(weights)
    if abs(total - 1.0) > 1e-9:
        raise WeightsNotNormalized(f"weights sum to {total!r}, not 1")
    return WeightedAverage(weights, values, math.fsum(values * weights))


def strong_weights(pa: PathAmplitudes, obs: DichotomicObservable = SIGMA_Z) -> WeightedAverage:
    """Route probabilities once the pointer destroys the interference."""
    w1, w2 = abs(pa.a1) ** 2, abs(pa.a2) ** 2
    total = w1 + w2
    if not total > STRONG_BLOCKED:
        raise BlockedTransition("both route amplitudes vanish")
    weights = np.array([w1 / total, w2 / total])
    values = np.array([obs.s1, obs.s2])
    mean = (obs.s1 * w1 + obs.s2 * w2) / total
    # guard the normal-range guarantee against last-bit rounding
    mean = min(max(mean, obs.s2), obs.s1)
    return WeightedAverage(weights, values, mean)


def weak_value(pa: PathAmplitudes, obs: DichotomicObservable = SIGMA_Z) -> WeakValue:
    total = pa.a1 + pa.a2
    if abs(total) < ORTHOGONAL_TOL:
        raise OrthogonalSelection(f"|A1 + A2| = {abs(total)!r} below {ORTHOGONAL_TOL}")
    value = (obs.s1 * pa.a1 + obs.s2 * pa.a2) / total
    weights = ((pa.a1 / total).real, (pa.a2 / total).real)
    return WeakValue(value, weights, obs.s1, obs.s2)


def ratio_product_for_target(z: float) -> float:
    """Product ``ab`` of real state ratios giving a weak value ``z`` of sigma_z."""
    if z == -1:
        raise SingularTarget("target -1 needs an infinite ratio product")
    return (1.0 - z) / (1.0 + z)


def weak_real_from_ratios(a: float, b: float, obs: DichotomicObservable = SIGMA_Z) -> float:
    """Weak value for states ``|1> + a|2>`` and ``|1> + b|2>`` with real ratios.

    With ``A2/A1 = ab`` this is ``(s1 + s2 ab)/(1 + ab)``, i.e. ``(1-ab)/(1+ab)``
    for sigma_z.
    """
    ab = a * b
    if 1.0 + ab == 0.0:
        raise OrthogonalSelection("pre- and post-selected states are orthogonal (ab = -1)")
    return (obs.s1 + obs.s2 * ab) / (1.0 + ab)


def convention_mean(
    t: Transition,
    obs: DichotomicObservable,
    base_pointer: GaussianPointer,
    conv: CouplingConvention,
) -> float:
    """Mean pointer reading under one of three ways of weakening the coupling.

    REDUCE_STRENGTH and RESCALE_OPERATOR both shift the pointer by ``lam*s_i``
    and return the raw reading, which tends to ``lam * Re(weak value)``.
    RESCALE_POINTER keeps unit coupling, widens the pointer to ``df/lam`` and
    reports in units of the shift, which tends to ``Re(weak value)``; it equals
    the raw mean of the other two modes divided by ``lam``.
    """
    lam = conv.lam
    if conv.mode is CouplingMode.RESCALE_POINTER:
        return mean_reading_closed(t, obs, base_pointer.widened(lam))
    return mean_reading_closed(t, obs.scaled(lam), base_pointer)
