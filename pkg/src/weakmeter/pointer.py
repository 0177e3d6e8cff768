"""Gaussian von Neumann pointer coupled impulsively to a dichotomic observable.

Reading densities are sampled on uniform odd-sized grids and integrated with
composite Simpson; the closed-form mean is kept separate so the two can be
checked against each other.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, signal, special

from .core import DichotomicObservable, PathAmplitudes, Transition, path_amplitudes
from .errors import BlockedTransition, GridTooNarrow

DEFAULT_GRID_POINTS = 4001
BLOCKED_NORM = 1e-300
BLOCKED_DENOMINATOR = 1e-12

# relative slack when checking grid coverage, to absorb linspace rounding
_SPAN_SLACK = 1e-9


@dataclass(frozen=True)
class GaussianPointer:
    delta_f: float

    def __post_init__(self):
        if not (math.isfinite(self.delta_f) and self.delta_f > 0):
            raise ValueError(f"pointer width must be positive and finite, got {self.delta_f!r}")

    def widened(self, lam: float) -> GaussianPointer:
        return GaussianPointer(self.delta_f / lam)


@dataclass(frozen=True)
class Grid:
    f_min: float
    f_max: float
    n_points: int = DEFAULT_GRID_POINTS

    def __post_init__(self):
        if not self.f_min < self.f_max:
            raise ValueError("grid needs f_min < f_max")
        if self.n_points < 3 or self.n_points % 2 == 0:
            raise ValueError(f"grid needs an odd point count >= 3, got {self.n_points}")

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.f_min, self.f_max, self.n_points)

    @property
    def step(self) -> float:
        return (self.f_max - self.f_min) / (self.n_points - 1)

    def covers(self, lo: float, hi: float) -> bool:
        slack = _SPAN_SLACK * max(1.0, abs(lo), abs(hi))
        return self.f_min <= lo + slack and self.f_max >= hi - slack

    @classmethod
    def centered(cls, center: float, half_width: float, n_points: int = DEFAULT_GRID_POINTS) -> Grid:
        return cls(center - half_width, center + half_width, n_points)


def quadrature_half_width(obs: DichotomicObservable, p: GaussianPointer) -> float:
    return 8.0 * (0.5 * p.delta_f + obs.spread)


def default_half_width(obs: DichotomicObservable, p: GaussianPointer) -> float:
    # wide pointers: [s2 - 5 df, s1 + 5 df] is the binding requirement
    return max(quadrature_half_width(obs, p), 5.0 * p.delta_f + 0.5 * obs.spread)


def default_grid(obs: DichotomicObservable, p: GaussianPointer, n_points: int | None = None) -> Grid:
    """Grid spanning ``center +- 8*(delta_f/2 + s1 - s2)``, widened to ``[s2 - 5 df, s1 + 5 df]``.

    With ``n_points=None`` the count is 4001, raised when needed so the step
    stays below ``delta_f/8`` (narrow pointers would otherwise be undersampled).
    """
    half = default_half_width(obs, p)
    if n_points is None:
        needed = int(math.ceil(2.0 * half / (p.delta_f / 8.0))) + 1
        n_points = max(DEFAULT_GRID_POINTS, needed + (1 - needed % 2))
    return Grid.centered(obs.center, half, n_points)


def simpson(values: np.ndarray, grid: Grid) -> float:
    return float(integrate.simpson(values, dx=grid.step))


def gaussian_profile(f, p: GaussianPointer):
    """Pointer amplitude ``(2/(pi df^2))^(1/4) exp(-f^2/df^2)``; square-integrates to 1."""
    df = p.delta_f
    return (2.0 / (math.pi * df * df)) ** 0.25 * np.exp(-np.square(f) / (df * df))


class NoiseProfile(enum.Enum):
    GAUSSIAN = "gaussian"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class ClassicalNoise:
    """Symmetric distribution of the initial pointer offset.

    ``delta_f_prime`` is the standard deviation for the Gaussian family and
    the half-width of the support for the uniform one.
    """

    profile: NoiseProfile
    delta_f_prime: float

    def __post_init__(self):
        object.__setattr__(self, "profile", NoiseProfile(self.profile))
        if not (math.isfinite(self.delta_f_prime) and self.delta_f_prime > 0):
            raise ValueError("noise width must be positive and finite")

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        w = self.delta_f_prime
        if self.profile is NoiseProfile.GAUSSIAN:
            return np.exp(-0.5 * (x / w) ** 2) / (w * math.sqrt(2.0 * math.pi))
        return np.where(np.abs(x) <= w, 0.5 / w, 0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        w = self.delta_f_prime
        if self.profile is NoiseProfile.GAUSSIAN:
            return special.ndtr(x / w)
        return np.clip((x + w) / (2.0 * w), 0.0, 1.0)

    @property
    def reach(self) -> float:
        """Offset beyond which the density is treated as zero."""
        return 5.0 * self.delta_f_prime

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        w = self.delta_f_prime
        if self.profile is NoiseProfile.GAUSSIAN:
            return rng.normal(0.0, w, size)
        return rng.uniform(-w, w, size)


@dataclass(frozen=True, eq=False)
class PointerDistribution:
    grid: Grid
    values: np.ndarray
    norm: float

    @property
    def f(self) -> np.ndarray:
        return self.grid.points

    def mean(self) -> float:
        return simpson(self.f * self.values, self.grid) / self.norm

    def std(self) -> float:
        m = self.mean()
        var = simpson((self.f - m) ** 2 * self.values, self.grid) / self.norm
        return math.sqrt(max(var, 0.0))


@dataclass(frozen=True)
class ConditionalSpinState:
    c1: complex
    c2: complex

    def normalized(self) -> tuple[complex, complex]:
        n = math.hypot(abs(self.c1), abs(self.c2))
        return self.c1 / n, self.c2 / n


def _check_reading_grid(obs: DichotomicObservable, p: GaussianPointer, g: Grid) -> None:
    lo, hi = obs.s2 - 5.0 * p.delta_f, obs.s1 + 5.0 * p.delta_f
    if not g.covers(lo, hi):
        raise GridTooNarrow(f"grid [{g.f_min}, {g.f_max}] must cover [{lo}, {hi}]")


def _route_fields(t: Transition, obs: DichotomicObservable, p: GaussianPointer, g: Grid):
    pa = path_amplitudes(t, obs)
    f = g.points
    b1 = gaussian_profile(f - obs.s1, p) * pa.a1
    b2 = gaussian_profile(f - obs.s2, p) * pa.a2
    return b1, b2


def distribution_components(t: Transition, obs: DichotomicObservable, p: GaussianPointer, g: Grid):
    """Return ``(|B1|^2, |B2|^2, 2 Re[B1 B2*])`` on the grid."""
    _check_reading_grid(obs, p, g)
    b1, b2 = _route_fields(t, obs, p, g)
    return np.abs(b1) ** 2, np.abs(b2) ** 2, 2.0 * np.real(b1 * np.conj(b2))


def reading_distribution(
    t: Transition, obs: DichotomicObservable, p: GaussianPointer, g: Grid | None = None
) -> PointerDistribution:
    """Unnormalized density of pointer readings in post-selected runs."""
    if g is None:
        g = default_grid(obs, p)
    _check_reading_grid(obs, p, g)
    b1, b2 = _route_fields(t, obs, p, g)
    values = np.abs(b1 + b2) ** 2
    norm = simpson(values, g)
    if not norm >= BLOCKED_NORM:
        raise BlockedTransition(f"post-selection norm {norm!r} vanishes")
    return PointerDistribution(g, values, norm)


def overlap_factor(obs: DichotomicObservable, p: GaussianPointer) -> float:
    """``exp(-(s1-s2)^2 / (2 df^2))``: overlap of the two shifted pointer states."""
    return math.exp(-(obs.spread**2) / (2.0 * p.delta_f**2))


def closed_form_terms(pa: PathAmplitudes, obs: DichotomicObservable, p: GaussianPointer) -> tuple[float, float]:
    """Numerator and denominator ``N`` of the exact mean pointer reading."""
    e = overlap_factor(obs, p)
    w1, w2 = abs(pa.a1) ** 2, abs(pa.a2) ** 2
    cross = (pa.a1 * pa.a2.conjugate()).real
    numerator = obs.s1 * w1 + obs.s2 * w2 + cross * (obs.s1 + obs.s2) * e
    denominator = w1 + w2 + 2.0 * cross * e
    return numerator, denominator


def post_selection_norm(t: Transition, obs: DichotomicObservable, p: GaussianPointer) -> float:
    return closed_form_terms(path_amplitudes(t, obs), obs, p)[1]


def mean_reading_closed(t: Transition, obs: DichotomicObservable, p: GaussianPointer) -> float:
    numerator, denominator = closed_form_terms(path_amplitudes(t, obs), obs, p)
    if not denominator >= BLOCKED_DENOMINATOR:
        raise BlockedTransition(f"post-selection norm {denominator!r} below {BLOCKED_DENOMINATOR}")
    return numerator / denominator


def mean_reading_numeric(
    t: Transition, obs: DichotomicObservable, p: GaussianPointer, g: Grid | None = None
) -> float:
    """Mean reading by Simpson quadrature of ``f P(f)`` over ``P(f)``."""
    if g is None:
        g = default_grid(obs, p)
    half = quadrature_half_width(obs, p)
    if not g.covers(obs.center - half, obs.center + half):
        raise GridTooNarrow(
            f"grid [{g.f_min}, {g.f_max}] must cover center +- {half} for quadrature means"
        )
    d = reading_distribution(t, obs, p, g)
    if d.norm < BLOCKED_DENOMINATOR:
        raise BlockedTransition(f"post-selection norm {d.norm!r} below {BLOCKED_DENOMINATOR}")
    return d.mean()


def _noise_kernel(noise: ClassicalNoise, step: float) -> np.ndarray:
    # cell-averaged weights: exact mass per grid cell, so delta-like noise
    # collapses to the identity and hard edges stay mass-conserving
    k = int(math.ceil(noise.reach / step))
    offsets = np.arange(-k, k + 1) * step
    w = noise.cdf(offsets + 0.5 * step) - noise.cdf(offsets - 0.5 * step)
    w = 0.5 * (w + w[::-1])
    return w / w.sum()


def smear(d: PointerDistribution, noise: ClassicalNoise) -> PointerDistribution:
    """Convolve a reading density with a random initial pointer offset.

    The output grid keeps the input step and is extended by the noise reach
    (five widths) on both sides.
    """
    h = d.grid.step
    kernel = _noise_kernel(noise, h)
    k = (len(kernel) - 1) // 2
    if k == 0:
        return PointerDistribution(d.grid, d.values.copy(), d.norm)
    grid = Grid(d.grid.f_min - k * h, d.grid.f_max + k * h, d.grid.n_points + 2 * k)
    if not grid.covers(d.grid.f_min - noise.reach, d.grid.f_max + noise.reach):
        raise GridTooNarrow("smeared grid does not cover the noise reach")
    values = signal.convolve(d.values, kernel, mode="full", method="auto")
    values = np.clip(values, 0.0, None)
    return PointerDistribution(grid, values, simpson(values, grid))


def conditional_spin_state(
    f: float, t: Transition, obs: DichotomicObservable, p: GaussianPointer
) -> ConditionalSpinState:
    """Unnormalized spin state left behind by a pointer reading ``f``."""
    g1 = float(gaussian_profile(f - obs.s1, p))
    g2 = float(gaussian_profile(f - obs.s2, p))
    return ConditionalSpinState(g1 * t.pre.c1, g2 * t.pre.c2)


def final_spin_mixture(
    f: float, t: Transition, obs: DichotomicObservable, noise: ClassicalNoise
) -> tuple[float, float]:
    """Diagonal weights ``(W(f-s1), W(f-s2))`` of the spin after a strong, noisy reading.

    Valid in the strong-meter regime, where the pointer states of the two
    eigenvalues do not overlap.
    """
    return float(noise.pdf(f - obs.s1)), float(noise.pdf(f - obs.s2))
