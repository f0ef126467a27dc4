"""Monte Carlo estimation of S_n(a) from simple symmetric random walks.

Since P(X_2k = 0) = C(2k,k) / 4^k, the sum can be written as

    S_n(a) = 4^n (sum_j a^j) E[ P(X_2K = 0) P(Y_2(n-K) = 0) ]

with K drawn on {0..n} proportionally to a^k. :func:`estimate_s` simulates
both walks and averages the product of return indicators;
:func:`estimate_s_rao` replaces the indicators by their exact probabilities
and only randomizes K.

Reproducibility: samples are cut into fixed-size blocks and block ``b``
draws from its own stream seeded by ``(seed, b)``. Chunks are contiguous
runs of blocks and only exchange integer histograms, so the result does not
depend on how many chunks are used.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .exactnum import as_rat, binomial

__all__ = [
    "WalkConfig",
    "McEstimate",
    "BLOCK_SIZE",
    "return_prob_exact",
    "block_rng",
    "simulate_return",
    "sample_k",
    "k_distribution",
    "estimate_s",
    "estimate_s_rao",
]

BLOCK_SIZE = 1 << 16
_U64 = 1 << 64


@dataclass(frozen=True)
class WalkConfig:
    n: int
    a: Fraction
    samples: int = 100_000
    seed: int = 0
    chunks: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", as_rat(self.a))
        if not isinstance(self.n, int) or self.n < 0:
            raise DomainError("n must be a nonnegative integer")
        if self.a <= 0:
            raise DomainError("random-walk estimators need a > 0")
        if self.samples < 1:
            raise DomainError("samples must be >= 1")
        if self.chunks < 1:
            raise DomainError("chunks must be >= 1")
        if not 0 <= self.seed < _U64:
            raise DomainError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int


def return_prob_exact(k: int) -> Fraction:
    """P(X_2k = 0) = C(2k,k) / 4^k."""
    if k < 0:
        raise DomainError("k must be >= 0")
    return Fraction(binomial(2 * k, k), 4**k)


def block_rng(seed: int, block: int) -> np.random.Generator:
    """Independent stream for one block, derived from the root seed by counter."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def simulate_return(k: int, rng: np.random.Generator) -> bool:
    """Walk 2k fair +-1 steps; True iff the walk ends at the origin."""
    if k < 0:
        raise DomainError("k must be >= 0")
    if k == 0:
        return True
    ups = int(rng.integers(0, 2, size=2 * k).sum())
    return ups == k


def _k_cdf(n: int, a: Fraction) -> np.ndarray:
    acc = Fraction(0)
    cum = []
    p = Fraction(1)
    for _ in range(n + 1):
        acc += p
        cum.append(acc)
        p *= a
    return np.array([float(c / acc) for c in cum])


def k_distribution(n: int, a) -> list[Fraction]:
    """Exact P(K = k) = a^k / sum_j a^j."""
    a = as_rat(a)
    if a <= 0:
        raise DomainError("K is only defined for a > 0")
    w = [a**k for k in range(n + 1)]
    tot = sum(w)
    return [x / tot for x in w]


def sample_k(n: int, a, rng: np.random.Generator, size: int | None = None):
    """Draw K on {0..n} with P(K = k) proportional to a^k, by inverse CDF."""
    a = as_rat(a)
    if a <= 0:
        raise DomainError("K is only defined for a > 0")
    if n < 0:
        raise DomainError("n must be >= 0")
    cdf = _k_cdf(n, a)
    u = rng.random(size)
    k = np.minimum(np.searchsorted(cdf, u, side="right"), n)
    return int(k) if size is None else k


def _scale(n: int, a: Fraction) -> Fraction:
    return 4**n * sum((a**j for j in range(n + 1)), Fraction(0))


def _block_sizes(samples: int) -> list[int]:
    full, rest = divmod(samples, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def _run_blocks(cfg: WalkConfig, blocks: list[int], sizes: list[int], simulate: bool) -> np.ndarray:
    """Histogram over K: of successful draws (simulate) or of all draws."""
    hist = np.zeros(cfg.n + 1, dtype=np.int64)
    cdf = _k_cdf(cfg.n, cfg.a)
    for b in blocks:
        rng = block_rng(cfg.seed, b)
        u = rng.random(sizes[b])
        k = np.minimum(np.searchsorted(cdf, u, side="right"), cfg.n)
        if simulate:
            # final position of 2k fair steps is 0 iff exactly k steps go up
            ok = (rng.binomial(2 * k, 0.5) == k) & (rng.binomial(2 * (cfg.n - k), 0.5) == cfg.n - k)
            k = k[ok]
        hist += np.bincount(k, minlength=cfg.n + 1)
    return hist


def _histogram(cfg: WalkConfig, simulate: bool) -> np.ndarray:
    sizes = _block_sizes(cfg.samples)
    parts = [list(map(int, c)) for c in np.array_split(np.arange(len(sizes)), cfg.chunks)]
    parts = [p for p in parts if p]
    if len(parts) == 1:
        partials = [_run_blocks(cfg, parts[0], sizes, simulate)]
    else:
        with ThreadPoolExecutor(max_workers=len(parts)) as pool:
            partials = list(pool.map(lambda p: _run_blocks(cfg, p, sizes, simulate), parts))
    total = np.zeros(cfg.n + 1, dtype=np.int64)
    for h in partials:
        total += h
    return total


def _summarize(values: list[Fraction], counts: list[int], cfg: WalkConfig) -> McEstimate:
    # exact moments from integer counts, rounded once
    N = cfg.samples
    mean = sum((c * v for c, v in zip(counts, values)), Fraction(0)) / N
    if N > 1:
        ss = sum((c * (v - mean) ** 2 for c, v in zip(counts, values)), Fraction(0))
        se = math.sqrt(float(ss / (N - 1) / N))
    else:
        se = 0.0
    return McEstimate(float(mean), se, N, cfg.seed)


def estimate_s(cfg: WalkConfig) -> McEstimate:
    """Average of scale * 1{X_2K = 0} * 1{Y_2(n-K) = 0} over simulated walks."""
    hits = int(_histogram(cfg, simulate=True).sum())
    scale = _scale(cfg.n, cfg.a)
    return _summarize([scale, Fraction(0)], [hits, cfg.samples - hits], cfg)


def estimate_s_rao(cfg: WalkConfig) -> McEstimate:
    """Rao-Blackwellized estimator: only K is random."""
    hist = _histogram(cfg, simulate=False)
    scale = _scale(cfg.n, cfg.a)
    values = [scale * return_prob_exact(k) * return_prob_exact(cfg.n - k) for k in range(cfg.n + 1)]
    return _summarize(values, [int(h) for h in hist], cfg)
