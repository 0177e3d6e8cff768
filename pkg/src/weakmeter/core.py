"""Two-level states, dichotomic observables and the two-route amplitudes.

The eigenbasis of the measured observable is the computational basis, so a
state is just the pair of amplitudes on ``|s1>`` and ``|s2>``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import InvalidRatio, InvalidState

NORM_TOL = 1e-12

def parse_complex(text: str) -> complex:
    """Parse ``"re"``, ``"re+imi"``, ``"imi"`` or the ``j`` variants.

    >>> parse_complex("0.5-0.5i")
    (0.5-0.5j)
    """
    s = text.strip().replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        return complex(s)
    except ValueError:
        raise InvalidRatio(f"cannot parse complex literal {text!r}") from None


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True)
class TwoLevelState:
    c1: complex
    c2: complex

    def __post_init__(self):
        object.__setattr__(self, "c1", complex(self.c1))
        object.__setattr__(self, "c2", complex(self.c2))
        if not (_finite(self.c1) and _finite(self.c2)):
            raise InvalidState("state amplitudes must be finite")
        norm = abs(self.c1) ** 2 + abs(self.c2) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidState(f"state not normalized: |c1|^2+|c2|^2 = {norm!r}")

    @classmethod
    def from_amplitudes(cls, c1: complex, c2: complex) -> TwoLevelState:
        """Normalize an arbitrary non-zero amplitude pair."""
        c1, c2 = complex(c1), complex(c2)
        n = math.hypot(abs(c1), abs(c2))
        if not math.isfinite(n) or n == 0.0:
            raise InvalidState("amplitudes must be finite and not both zero")
        return cls(c1 / n, c2 / n)

    def to_reals(self) -> list[float]:
        return [self.c1.real, self.c1.imag, self.c2.real, self.c2.imag]

    @classmethod
    def from_reals(cls, values) -> TwoLevelState:
        r1, i1, r2, i2 = (float(v) for v in values)
        return cls.from_amplitudes(complex(r1, i1), complex(r2, i2))

    def with_phase(self, phase: float) -> TwoLevelState:
        u = cmath.exp(1j * phase)
        return TwoLevelState(u * self.c1, u * self.c2)


@dataclass(frozen=True)
class DichotomicObservable:
    s1: float = 1.0
    s2: float = -1.0

    def __post_init__(self):
        if not (math.isfinite(self.s1) and math.isfinite(self.s2)):
            raise ValueError("eigenvalues must be finite")
        if not self.s1 > self.s2:
            raise ValueError(f"need s1 > s2, got s1={self.s1}, s2={self.s2}")

    @property
    def spread(self) -> float:
        return self.s1 - self.s2

    @property
    def center(self) -> float:
        return 0.5 * (self.s1 + self.s2)

    def scaled(self, lam: float) -> DichotomicObservable:
        """Eigenvalues multiplied by ``lam > 0``."""
        return DichotomicObservable(lam * self.s1, lam * self.s2)


SIGMA_Z = DichotomicObservable(1.0, -1.0)


@dataclass(frozen=True)
class Transition:
    pre: TwoLevelState
    post: TwoLevelState


@dataclass(frozen=True)
class PathAmplitudes:
    a1: complex
    a2: complex

    @property
    def total(self) -> complex:
        return self.a1 + self.a2


def state_from_ratio(r: complex) -> TwoLevelState:
    """State ``(|1> + r|2>)/sqrt(1+|r|^2)`` with a real positive first component."""
    r = complex(r)
    if not _finite(r):
        raise InvalidRatio(f"ratio must be finite, got {r!r}")
    n = math.sqrt(1.0 + abs(r) ** 2)
    return TwoLevelState(complex(1.0 / n, 0.0), r / n)


def path_amplitudes(t: Transition, obs: DichotomicObservable = SIGMA_Z) -> PathAmplitudes:
    # obs only labels the basis; the amplitudes do not depend on eigenvalues
    return PathAmplitudes(
        t.post.c1.conjugate() * t.pre.c1,
        t.post.c2.conjugate() * t.pre.c2,
    )


def overlap(t: Transition) -> complex:
    """``<phi|psi>`` with no free evolution between selections."""
    return t.post.c1.conjugate() * t.pre.c1 + t.post.c2.conjugate() * t.pre.c2
