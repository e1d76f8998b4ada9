"""Exact Monte Carlo simulation of bounded-distance decoding over AWGN.

Each trial transmits a codeword (the all-zero word by default, which is
representative of every codeword by linearity and channel symmetry), adds
i.i.d. Gaussian noise, and classifies the decoder outcome as correct,
undetected error, or decoding failure.

Randomness is counter-based: trial t's noise is a pure function of
(seed, t).  Trials are processed in fixed-size batches, each driven by a
Philox generator keyed on the seed with the batch index placed in the
counter, so counts are bit-identical for any number of worker threads and a
run can be replayed exactly at a different decoding radius.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.random import Generator, Philox
from scipy import special as _sp

from .bounds import ChannelParams, p_tot_gt
from .codes import LinearCode, bpsk_modulate

__all__ = [
    "DEFAULT_BATCH_SIZE",
    "SimConfig",
    "SimResult",
    "RadiusCheck",
    "bd_decode",
    "run",
    "failure_rate_check",
    "confidence_interval",
    "wilson_interval",
]

DEFAULT_BATCH_SIZE = 1 << 16

# Philox counter namespaces: the batch index sits in bits 128+, the stream
# kind in bits 192+, leaving 2^128 counter values per batch -- far beyond
# what one batch ever draws.
_STREAM_DECODE = 0
_STREAM_RADIUS = 1


@dataclass(frozen=True)
class SimConfig:
    """One simulation run: code, channel, radius, trial count, and seed.

    ``transmit_random`` switches from all-zero transmission to a fresh
    uniformly random codeword per trial; it exists to spot-check the symmetry
    argument that makes all-zero transmission representative.
    """

    code: LinearCode
    channel: ChannelParams
    r_d: float
    trials: int
    seed: int = 1
    transmit_random: bool = False
    batch_size: int = DEFAULT_BATCH_SIZE
    confidence: float = 0.95

    def __post_init__(self) -> None:
        if self.code.codewords is None:
            raise ValueError("simulation needs an explicit codeword list")
        if self.channel.n != self.code.n:
            raise ValueError(
                f"channel n={self.channel.n} != code n={self.code.n}")
        if abs(self.channel.rate - self.code.rate) > 1e-12:
            raise ValueError(
                f"channel rate {self.channel.rate} != code rate {self.code.rate}")
        if not (math.isfinite(self.r_d) and self.r_d >= 0):
            raise ValueError(f"r_d must be finite and >= 0, got {self.r_d}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if not 0 < self.confidence < 1:
            raise ValueError(
                f"confidence must be in (0, 1), got {self.confidence}")


@dataclass(frozen=True)
class SimResult:
    """Outcome counts and rate estimates of one run.

    Counts always partition the trials; the rates are exact count ratios, so
    p_c + p_u + p_f = 1 and p_w = p_u + p_f.  ``ci_halfwidths`` holds Wilson
    score interval half-widths at the stated confidence level.
    """

    correct: int
    undetected: int
    failure: int
    trials: int
    confidence: float
    ci_halfwidths: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.correct + self.undetected + self.failure != self.trials:
            raise ValueError("outcome counts do not partition the trials")

    @property
    def p_c(self) -> float:
        return self.correct / self.trials

    @property
    def p_u(self) -> float:
        return self.undetected / self.trials

    @property
    def p_f(self) -> float:
        return self.failure / self.trials

    @property
    def p_w(self) -> float:
        return (self.undetected + self.failure) / self.trials

    def standard_error(self, which: str) -> float:
        """Plain binomial standard error sqrt(p(1-p)/N) of one estimate."""
        p = {"p_c": self.p_c, "p_u": self.p_u, "p_f": self.p_f,
             "p_w": self.p_w}[which]
        return math.sqrt(p * (1.0 - p) / self.trials)


def bd_decode(y, code: LinearCode, r_d: float):
    """Decode one received vector with the bounded-distance rule.

    Returns the index of the closest modulated codeword when that closest
    distance is <= r_d (ties broken toward the lowest index), or None when no
    codeword lies within r_d, which is a decoding failure.
    """
    if code.codewords is None:
        raise ValueError("code has no codeword list")
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (code.n,):
        raise ValueError(f"received vector has shape {y.shape}, "
                         f"expected ({code.n},)")
    x = bpsk_modulate(code.codewords)
    d2 = ((x - y[None, :]) ** 2).sum(axis=1)
    idx = int(np.argmin(d2))  # argmin returns the first (lowest) index on ties
    if d2[idx] <= r_d * r_d:
        return idx
    return None


def _batch_rng(seed: int, stream: int, batch_index: int) -> Generator:
    return Generator(Philox(key=seed,
                            counter=(stream << 192) | (batch_index << 128)))


def _batch_sizes(trials: int, batch_size: int) -> list[int]:
    full, rem = divmod(trials, batch_size)
    return [batch_size] * full + ([rem] if rem else [])


def _decode_batch(cfg: SimConfig, modulated: np.ndarray, cw_norm2: np.ndarray,
                  batch_index: int, m: int) -> tuple[int, int, int]:
    """Counts (correct, undetected, failure) for one batch; a pure function
    of (cfg, batch_index)."""
    rng = _batch_rng(cfg.seed, _STREAM_DECODE, batch_index)
    n_codewords = modulated.shape[0]
    if cfg.transmit_random:
        tx = rng.integers(0, n_codewords, size=m)
    else:
        tx = np.zeros(m, dtype=np.int64)
    noise = rng.standard_normal((m, cfg.code.n)) * cfg.channel.sigma
    y = modulated[tx] + noise
    # squared distances to every codeword; compare squared radii throughout
    d2 = ((y * y).sum(axis=1)[:, None] - 2.0 * (y @ modulated.T)
          + cw_norm2[None, :])
    closest = np.argmin(d2, axis=1)
    min_d2 = d2[np.arange(m), closest]
    decoded = min_d2 <= cfg.r_d * cfg.r_d
    correct = int(np.count_nonzero(decoded & (closest == tx)))
    undetected = int(np.count_nonzero(decoded & (closest != tx)))
    return correct, undetected, m - correct - undetected


def run(cfg: SimConfig, threads: int = 1) -> SimResult:
    """Simulate ``cfg.trials`` transmissions and tally the decoder outcomes.

    Identical configurations produce bit-identical counts for any ``threads``
    value: batches are independent pure functions merged by summation.
    """
    modulated = bpsk_modulate(cfg.code.codewords)
    cw_norm2 = (modulated * modulated).sum(axis=1)
    sizes = _batch_sizes(cfg.trials, cfg.batch_size)

    def work(b: int) -> tuple[int, int, int]:
        return _decode_batch(cfg, modulated, cw_norm2, b, sizes[b])

    if threads > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, range(len(sizes))))
    else:
        parts = [work(b) for b in range(len(sizes))]
    correct = sum(p[0] for p in parts)
    undetected = sum(p[1] for p in parts)
    failure = sum(p[2] for p in parts)
    ci = {}
    for name, successes in (("p_c", correct), ("p_u", undetected),
                            ("p_f", failure),
                            ("p_w", undetected + failure)):
        ci[name] = confidence_interval(successes, cfg.trials, cfg.confidence)
    return SimResult(correct=correct, undetected=undetected, failure=failure,
                     trials=cfg.trials, confidence=cfg.confidence,
                     ci_halfwidths=ci)


@dataclass(frozen=True)
class RadiusCheck:
    """Simulated vs analytic probability of the noise radius exceeding r_d.

    ``z`` is the two-sided normal score of the simulated count against the
    analytic probability; the analytic term is exact, so |z| beyond ~3 flags
    a real disagreement rather than bound looseness.
    """

    r_d: float
    trials: int
    exceed: int
    simulated: float
    analytic: float
    z: float


def failure_rate_check(cfg: SimConfig, threads: int = 1) -> RadiusCheck:
    """Count raw noise norms beyond r_d (independent of any decoding) and
    compare against the exact chi-tail probability."""
    sizes = _batch_sizes(cfg.trials, cfg.batch_size)
    rd2 = cfg.r_d * cfg.r_d

    def work(b: int) -> int:
        rng = _batch_rng(cfg.seed, _STREAM_RADIUS, b)
        noise = rng.standard_normal((sizes[b], cfg.code.n)) * cfg.channel.sigma
        return int(np.count_nonzero((noise * noise).sum(axis=1) > rd2))

    if threads > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            exceed = sum(pool.map(work, range(len(sizes))))
    else:
        exceed = sum(work(b) for b in range(len(sizes)))

    analytic = p_tot_gt(cfg.r_d, cfg.channel)
    simulated = exceed / cfg.trials
    if analytic in (0.0, 1.0):
        z = 0.0 if simulated == analytic else math.inf
    else:
        z = ((simulated - analytic)
             / math.sqrt(analytic * (1.0 - analytic) / cfg.trials))
    return RadiusCheck(r_d=cfg.r_d, trials=cfg.trials, exceed=exceed,
                       simulated=simulated, analytic=analytic, z=z)


def wilson_interval(successes: int, trials: int,
                    level: float = 0.95) -> tuple[float, float]:
    """Wilson score confidence interval for a binomial proportion.

    Behaves sensibly at the extremes: zero successes still yield a nonzero
    upper limit, and the interval never leaves [0, 1].
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not 0 <= successes <= trials:
        raise ValueError(f"successes must be in [0, {trials}], got {successes}")
    if not 0 < level < 1:
        raise ValueError(f"level must be in (0, 1), got {level}")
    z = float(_sp.ndtri(0.5 * (1.0 + level)))
    p_hat = successes / trials
    denom = 1.0 + z * z / trials
    center = (p_hat + z * z / (2 * trials)) / denom
    margin = (z / denom) * math.sqrt(p_hat * (1.0 - p_hat) / trials
                                     + z * z / (4.0 * trials * trials))
    return max(0.0, center - margin), min(1.0, center + margin)


def confidence_interval(successes: int, trials: int,
                        level: float = 0.95) -> float:
    """Wilson score interval half-width; the interval itself is available
    from :func:`wilson_interval` (it is not centered on the raw ratio)."""
    lo, hi = wilson_interval(successes, trials, level)
    return 0.5 * (hi - lo)
