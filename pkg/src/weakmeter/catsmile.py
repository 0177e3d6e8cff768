"""Two-qubit location/spin system: a "cat" on the left or right with spin up or down.

Basis order throughout is ``(L+, L-, R+, R-)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidState, OrthogonalSelection, SingularTarget

ORTHOGONAL_TOL = 1e-12

# eigenvalues of Pi_L, Pi_R, sigma_z^L = Pi_L sigma_z, sigma_z^R on each route
PI_L = np.array([1.0, 1.0, 0.0, 0.0])
PI_R = np.array([0.0, 0.0, 1.0, 1.0])
SIGMA_L = np.array([1.0, -1.0, 0.0, 0.0])
SIGMA_R = np.array([0.0, 0.0, 1.0, -1.0])
ROUTE_LABELS = ("L+", "L-", "R+", "R-")


@dataclass(frozen=True, eq=False)
class FourLevelState:
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (4,) or not np.all(np.isfinite(amps)):
            raise InvalidState("four finite amplitudes required")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > 1e-12:
            raise InvalidState(f"state not normalized: {norm!r}")
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_unnormalized(cls, amps) -> FourLevelState:
        amps = np.asarray(amps, dtype=complex)
        n = float(np.linalg.norm(amps))
        if n == 0.0 or not math.isfinite(n):
            raise InvalidState("amplitudes must be finite and not all zero")
        return cls(amps / n)

    def to_reals(self) -> list[list[float]]:
        return [[float(a.real), float(a.imag)] for a in self.amps]


@dataclass(frozen=True)
class RouteAmplitudes:
    a_Lp: complex
    a_Lm: complex
    a_Rp: complex
    a_Rm: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.a_Lp, self.a_Lm, self.a_Rp, self.a_Rm], dtype=complex)

    @property
    def total(self) -> complex:
        return self.a_Lp + self.a_Lm + self.a_Rp + self.a_Rm


@dataclass(frozen=True)
class LocalWeakValues:
    pi_L: complex
    pi_R: complex
    sigma_L: complex
    sigma_R: complex

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.pi_L, self.pi_R, self.sigma_L, self.sigma_R)

    def to_dict(self) -> dict:
        return {
            name: {"re": v.real, "im": v.imag}
            for name, v in zip(("pi_L", "pi_R", "sigma_L", "sigma_R"), self.as_tuple())
        }


@dataclass(frozen=True)
class SmileTargets:
    x: float
    y: float

    def __post_init__(self):
        if self.x == -1:
            raise SingularTarget("x = -1 cannot be reached")


def route_amplitudes(pre: FourLevelState, post: FourLevelState) -> RouteAmplitudes:
    a = np.conj(post.amps) * pre.amps
    return RouteAmplitudes(*(complex(v) for v in a))


def local_weak_values(r: RouteAmplitudes) -> LocalWeakValues:
    a = r.as_array()
    total = r.total
    if abs(total) < ORTHOGONAL_TOL:
        raise OrthogonalSelection(f"|sum A_ij| = {abs(total)!r} below {ORTHOGONAL_TOL}")
    return LocalWeakValues(
        pi_L=complex(np.dot(PI_L, a)) / total,
        pi_R=complex(np.dot(PI_R, a)) / total,
        sigma_L=complex(np.dot(SIGMA_L, a)) / total,
        sigma_R=complex(np.dot(SIGMA_R, a)) / total,
    )


def _principal_sqrt(v: float) -> complex:
    # +0j imaginary part puts negative reals on the positive imaginary axis
    return cmath.sqrt(complex(v, 0.0))


def construct_states(targets: SmileTargets) -> tuple[FourLevelState, FourLevelState]:
    """Pre/post states with weak values ``(Pi_L, Pi_R, sigma^L, sigma^R) = (1, 0, x, y)``.

    One choice among many: ``alpha = (1, u, v, v)`` and
    ``beta* = (1, u, v, -v)`` with ``u = sqrt((1-x)/(1+x))`` and
    ``v = sqrt(y/(1+x))``, so the route amplitudes are ``(1, u^2, v^2, -v^2)``.
    """
    x, y = targets.x, targets.y
    u = _principal_sqrt((1.0 - x) / (1.0 + x))
    v = _principal_sqrt(y / (1.0 + x))
    alpha = np.array([1.0, u, v, v], dtype=complex)
    beta = np.conj(np.array([1.0, u, v, -v], dtype=complex))
    return FourLevelState.from_unnormalized(alpha), FourLevelState.from_unnormalized(beta)


def strong_route_probabilities(r: RouteAmplitudes) -> np.ndarray:
    """Route probabilities when all four projectors are measured accurately."""
    w = np.abs(r.as_array()) ** 2
    total = float(w.sum())
    if total == 0.0:
        raise OrthogonalSelection("all route amplitudes vanish")
    return w / total


def strong_conditional_mean(r: RouteAmplitudes, operator: np.ndarray, side: str) -> float:
    """Strong-measurement mean of ``operator`` among runs that took the ``side`` routes."""
    p = strong_route_probabilities(r)
    mask = PI_L if side == "L" else PI_R
    mass = float(np.dot(mask, p))
    if mass == 0.0:
        raise OrthogonalSelection(f"no strong probability on side {side}")
    return float(np.dot(mask * operator, p)) / mass
