"""Classical coin passed out and back with random flips, kept only if it returns heads.

Heads is recorded as +1, tails as -1. Bob's record is taken after the
outbound leg (flip probability ``alpha``); the return leg flips with
probability ``1 - delta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoPostSelectedEvents, ZeroLambda
from .limits import WeightedAverage, anomalous_decomposition

_BATCH = 1 << 20


@dataclass(frozen=True)
class CoinProtocol:
    alpha: float
    delta: float

    def __post_init__(self):
        for name in ("alpha", "delta"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")


@dataclass(frozen=True)
class CoinStats:
    kept: int
    sum: int

    @property
    def mean(self) -> float:
        if self.kept == 0:
            raise NoPostSelectedEvents("no trial survived post-selection")
        return self.sum / self.kept

    def merged(self, other: CoinStats) -> CoinStats:
        return CoinStats(self.kept + other.kept, self.sum + other.sum)


def coin_weights(p: CoinProtocol) -> tuple[float, float]:
    keep_heads = (1.0 - p.alpha) * p.delta
    keep_tails = p.alpha * (1.0 - p.delta)
    denom = keep_heads + keep_tails
    if denom <= 0.0:
        raise NoPostSelectedEvents(f"alpha={p.alpha}, delta={p.delta}: the coin never returns heads")
    return keep_heads / denom, keep_tails / denom


def coin_mean(p: CoinProtocol) -> float:
    p1, p2 = coin_weights(p)
    return p1 - p2


def coin_average(p: CoinProtocol) -> WeightedAverage:
    return anomalous_decomposition([1.0, -1.0], coin_weights(p))


def _simulate_shard(p: CoinProtocol, trials: int, rng: np.random.Generator) -> CoinStats:
    kept = total = 0
    remaining = trials
    while remaining:
        n = min(remaining, _BATCH)
        outbound_flip = rng.random(n) < p.alpha
        return_flip = rng.random(n) >= p.delta
        record = np.where(outbound_flip, -1, 1)
        # final side is heads iff the two legs flipped an even number of times
        keep = outbound_flip == return_flip
        kept += int(keep.sum())
        total += int(record[keep].sum())
        remaining -= n
    return CoinStats(kept, total)


def coin_simulate(p: CoinProtocol, trials: int, seed: int, shards: int = 1) -> CoinStats:
    """Monte Carlo run of the protocol.

    Trials are split over ``shards`` independent PCG64 streams spawned from
    ``SeedSequence(seed)``; shard results are summed. The same
    ``(p, trials, seed, shards)`` always yields the same stats.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    children = np.random.SeedSequence(seed).spawn(shards)
    base, extra = divmod(trials, shards)
    stats = CoinStats(0, 0)
    for i, child in enumerate(children):
        n = base + (1 if i < extra else 0)
        if n:
            stats = stats.merged(_simulate_shard(p, n, np.random.default_rng(child)))
    if stats.kept == 0:
        raise NoPostSelectedEvents(f"none of {trials} trials returned heads")
    return stats


def coin_standard_error(p: CoinProtocol, kept: int) -> float:
    """Standard error of the kept-record mean: ``2 sqrt(p1 p2 / kept)``."""
    p1, p2 = coin_weights(p)
    return 2.0 * math.sqrt(p1 * p2 / kept)


def recalibrated_mean(p: CoinProtocol, lam: float) -> float:
    """Mean of the rescaled record ``s / lam``."""
    if lam == 0:
        raise ZeroLambda("recalibration factor must be non-zero")
    return coin_mean(p) / lam


def recalibrated_average(p: CoinProtocol, lam: float) -> WeightedAverage:
    """The rescaled mean as an ordinary average over the values ``+-1/lam``."""
    if lam == 0:
        raise ZeroLambda("recalibration factor must be non-zero")
    p1, p2 = coin_weights(p)
    values, weights = [1.0 / lam, -1.0 / lam], [p1, p2]
    if lam < 0:
        values, weights = values[::-1], weights[::-1]
    return anomalous_decomposition(values, weights)
