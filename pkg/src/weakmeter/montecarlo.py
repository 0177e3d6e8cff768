"""Run-by-run simulation of the pre-select / measure / post-select protocol.

Each attempt draws a pointer reading from its marginal (a two-Gaussian
mixture weighted by the pre-selected populations), then keeps it with the
probability that the spin state left behind passes the post-selection. The
sampler never touches the quadrature grid, so it can serve as an independent
check on the analytic reading density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DichotomicObservable, Transition
from .errors import AcceptanceTooLow, BlockedTransition
from .pointer import BLOCKED_DENOMINATOR, ClassicalNoise, GaussianPointer, post_selection_norm

MAX_ATTEMPTS = 10_000_000
MIN_ACCEPTANCE = 1e-6
_MAX_BATCH = 1 << 22
_MIN_BATCH = 1 << 12


@dataclass(frozen=True, eq=False)
class SampleRun:
    readings: np.ndarray
    attempted: int
    accepted: int
    seed: int
    empirical_mean: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "empirical_mean", float(np.mean(self.readings)))

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.attempted

    @property
    def standard_error(self) -> float:
        return float(np.std(self.readings, ddof=1) / math.sqrt(self.accepted))


def _attempt_batch(t: Transition, obs: DichotomicObservable, p: GaussianPointer, n: int, rng):
    pre, post = t.pre, t.post
    on_s1 = rng.random(n) < abs(pre.c1) ** 2
    # |G(f - s)|^2 is a normal density with standard deviation delta_f / 2
    f = np.where(on_s1, obs.s1, obs.s2) + rng.normal(0.0, 0.5 * p.delta_f, n)
    # G(f - s2)/G(f - s1) = exp(x) with x linear in f; write the acceptance
    # ratio in terms of r = exp(-|x|) <= 1 so nothing overflows
    a1 = post.c1.conjugate() * pre.c1
    a2 = post.c2.conjugate() * pre.c2
    w1, w2, cross = abs(a1) ** 2, abs(a2) ** 2, 2.0 * (a1 * a2.conjugate()).real
    q1, q2 = abs(pre.c1) ** 2, abs(pre.c2) ** 2
    x = 2.0 * obs.spread * (obs.center - f) / p.delta_f**2
    r = np.exp(-np.abs(x))
    r2 = r * r
    s1_dominant = x <= 0
    accept_prob = np.where(
        s1_dominant,
        (w1 + cross * r + w2 * r2) / (q1 + q2 * r2),
        (w2 + cross * r + w1 * r2) / (q2 + q1 * r2),
    )
    keep = rng.random(n) < accept_prob
    return f, keep


def _run(t, obs, p, n_accept, seed, noise: ClassicalNoise | None) -> SampleRun:
    if n_accept < 1:
        raise ValueError("n_accept must be >= 1")
    if post_selection_norm(t, obs, p) < BLOCKED_DENOMINATOR:
        raise BlockedTransition("post-selection probability is zero")
    rng = np.random.default_rng(seed)
    chunks: list[np.ndarray] = []
    accepted = attempted = 0
    while accepted < n_accept:
        if attempted >= MAX_ATTEMPTS and accepted < MIN_ACCEPTANCE * attempted:
            raise AcceptanceTooLow(f"{accepted} of {attempted} attempts accepted")
        rate = (accepted + 1) / (attempted + 1) if attempted else None
        if rate is None:
            n = _MIN_BATCH
        else:
            n = int(1.1 * (n_accept - accepted) / rate) + 1
            n = min(max(n, _MIN_BATCH), _MAX_BATCH)
        f, keep = _attempt_batch(t, obs, p, n, rng)
        hits = np.flatnonzero(keep)
        need = n_accept - accepted
        if hits.size >= need:
            # stop at the attempt that produced the last needed acceptance
            n = int(hits[need - 1]) + 1
            hits = hits[:need]
        kept = f[hits]
        if noise is not None:
            kept = kept + noise.sample(rng, kept.size)
        attempted += n
        accepted += kept.size
        chunks.append(kept)
    return SampleRun(np.concatenate(chunks), attempted, accepted, seed)


def sample_readings(
    t: Transition, obs: DichotomicObservable, p: GaussianPointer, n_accept: int, seed: int
) -> SampleRun:
    return _run(t, obs, p, n_accept, seed, None)


def sample_with_noise(
    t: Transition,
    obs: DichotomicObservable,
    p: GaussianPointer,
    noise: ClassicalNoise,
    n_accept: int,
    seed: int,
) -> SampleRun:
    """As ``sample_readings`` but each kept reading is offset by a draw from ``noise``."""
    return _run(t, obs, p, n_accept, seed, noise)
