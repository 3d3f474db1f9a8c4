"""Moments of S_k = U_1 X_1 + ... + U_k X_k, exactly and by Monte Carlo.

U_i are uniform on (0, 1), X_i are rate-1 exponentials, all independent.
The exact side works coefficient-wise with formal series, so every
identity here is a polynomial identity in lambda.  The Monte Carlo side
evaluates the same expectations numerically for a fixed float lambda.

Reproducibility: samples are drawn in fixed-size blocks and block ``b``
always reads from the Philox substream keyed by ``(seed, b)``.  The
``chunks`` setting only controls how many blocks run concurrently; block
statistics are merged in block order, so the report is bit-identical for
any degree of parallelism.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .exact import LambdaPoly, poly_eval, poly_substitute_negated
from .series import (
    TruncatedSeries,
    egf_coeff,
    series_inverse,
    series_log1p,
    series_mul,
    series_pow,
    series_shift_down,
)
from .stirling import binomial, new_stirling1_unsigned_conv, stirling1_signed

#: samples per independent substream
BLOCK_SIZE = 1 << 16
#: |z| above this is treated as a failed check
Z_THRESHOLD = 5.0


# --------------------------------------------------------------------------
# exact moments

def exact_power_moment(k: int, j: int) -> Fraction:
    """E[S_k^j] = j! [t^j] (-log(1-t)/t)^k."""
    if k < 1:
        raise ValueError("k must be positive")
    if j < 0:
        raise ValueError("j must be nonnegative")
    t = TruncatedSeries.variable(j + 1)
    per_factor = series_shift_down(-series_log1p(-t), 1)
    return egf_coeff(series_pow(per_factor, k), j)


def exact_degenerate_moment(k: int, n: int, order: int | None = None) -> LambdaPoly:
    """E[(S_k)_{n,lambda}] as a polynomial in lambda.

    Reads the coefficient off E[e_lambda^{S_k}(t)] = (log(1/(1-p))/p)^k with
    p = (1/lambda) log(1 + lambda t).
    """
    if k < 1:
        raise ValueError("k must be positive")
    if n < 0:
        raise ValueError("n must be nonnegative")
    order = n if order is None else order
    if order < n:
        raise ValueError(f"truncation order {order} is below n={n}")
    N = order + 1
    p = TruncatedSeries(
        [LambdaPoly()]
        + [LambdaPoly.monomial(m - 1, Fraction((-1) ** (m - 1), m)) for m in range(1, N + 1)],
        N,
    )
    u = series_shift_down(p, 1)
    log_shift = series_shift_down(-series_log1p(-p), 1)
    single = series_mul(series_inverse(u), log_shift)
    return egf_coeff(series_pow(single, k), n)


def degenerate_moment_from_power(k: int, n: int) -> LambdaPoly:
    """sum_j S1(n,j) lambda^(n-j) E[S_k^j], expanding the falling factorial."""
    coeffs = [Fraction(0)] * (n + 1)
    for j in range(n + 1):
        s = stirling1_signed(n, j)
        if s:
            coeffs[n - j] = s * exact_power_moment(k, j)
    return LambdaPoly(coeffs)


def theorem22_rhs(n: int, k: int) -> LambdaPoly:
    """sum_{m=k}^n lambda^(m-k) C(n,m) S1(m,k) E[(S_k)_{n-m,lambda}]."""
    if not n >= k >= 1:
        raise ValueError(f"need n >= k >= 1, got n={n}, k={k}")
    total = LambdaPoly()
    for m in range(k, n + 1):
        w = binomial(n, m) * stirling1_signed(m, k)
        if w:
            total = total + LambdaPoly.monomial(m - k, w) * exact_degenerate_moment(k, n - m)
    return total


def new_stirling1_unsigned_negated(n: int, k: int) -> LambdaPoly:
    """Unsigned new type first-kind number at parameter -lambda."""
    return poly_substitute_negated(new_stirling1_unsigned_conv(n, k))


# --------------------------------------------------------------------------
# sampling

def block_generator(seed: int, block: int) -> np.random.Generator:
    """Counter-based Philox stream for one block, keyed only by (seed, block)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def sample_S_k_batch(k: int, size: int, rng: np.random.Generator) -> np.ndarray:
    if k < 1:
        raise ValueError("k must be positive")
    u = rng.random((size, k))
    # inverse CDF of Exp(1); v in [0, 1) keeps log1p(-v) finite
    x = -np.log1p(-rng.random((size, k)))
    return (u * x).sum(axis=1)


def sample_S_k(k: int, rng: np.random.Generator) -> float:
    return float(sample_S_k_batch(k, 1, rng)[0])


def falling_factorial(s: np.ndarray, n: int, lam: float) -> np.ndarray:
    """(s)_{n,lam} = s (s - lam) ... (s - (n-1) lam), elementwise."""
    out = np.ones_like(s)
    for i in range(n):
        out = out * (s - i * lam)
    return out


# --------------------------------------------------------------------------
# Monte Carlo driver

@dataclass(frozen=True)
class McConfig:
    k: int
    n: int
    lambda_value: float
    samples: int
    seed: int
    chunks: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if not math.isfinite(self.lambda_value):
            raise ValueError("lambda must be finite")
        if self.samples < 2:
            raise ValueError("at least two samples are needed for a variance")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.chunks < 1:
            raise ValueError("chunks must be positive")


@dataclass(frozen=True)
class McReport:
    estimate: float
    std_error: float
    exact_value: float
    z_score: float
    samples_used: int

    @property
    def passed(self) -> bool:
        return abs(self.z_score) <= Z_THRESHOLD

    def to_dict(self) -> dict:
        return asdict(self)


def _block_stats(k, integrand, samples, seed, block):
    size = min(BLOCK_SIZE, samples - block * BLOCK_SIZE)
    vals = integrand(sample_S_k_batch(k, size, block_generator(seed, block)))
    mean = float(vals.mean())
    m2 = float(((vals - mean) ** 2).sum())
    return size, mean, m2


def _run(k: int, integrand: Callable[[np.ndarray], np.ndarray], samples: int, seed: int, chunks: int):
    n_blocks = -(-samples // BLOCK_SIZE)

    def work(b):
        return _block_stats(k, integrand, samples, seed, b)

    if chunks == 1 or n_blocks == 1:
        stats = [work(b) for b in range(n_blocks)]
    else:
        with ThreadPoolExecutor(max_workers=chunks) as pool:
            stats = list(pool.map(work, range(n_blocks)))

    # pairwise merge of (count, mean, M2), always in block order
    count, mean, m2 = stats[0]
    for nb, mb, m2b in stats[1:]:
        total = count + nb
        delta = mb - mean
        mean = mean + delta * nb / total
        m2 = m2 + m2b + delta * delta * count * nb / total
        count = total
    var = m2 / (count - 1)
    return mean, math.sqrt(var / count), count


def _report(estimate, std_error, exact, count) -> McReport:
    if std_error > 0:
        z = (estimate - exact) / std_error
    elif estimate == exact:
        z = 0.0
    else:
        z = math.copysign(math.inf, estimate - exact)
    return McReport(estimate, std_error, exact, z, count)


def mc_estimate_degenerate_moment(cfg: McConfig) -> McReport:
    """Monte Carlo estimate of E[(S_k)_{n,lambda}] against the exact polynomial."""
    lam = float(cfg.lambda_value)
    exact = float(poly_eval(exact_degenerate_moment(cfg.k, cfg.n), Fraction(lam)))
    est, se, count = _run(
        cfg.k, lambda s: falling_factorial(s, cfg.n, lam), cfg.samples, cfg.seed, cfg.chunks
    )
    return _report(est, se, exact, count)


def mc_check_theorem22(
    n: int, k: int, lambda_value: float, samples: int, seed: int, chunks: int = 1
) -> McReport:
    """Estimate the moment-sum side of the degenerate Adell-Lekuona identity.

    Each sample contributes the whole summand
    sum_m lambda^(m-k) C(n,m) S1(m,k) (s)_{n-m,lambda}, so the standard
    error accounts for the correlation between terms.
    """
    if not n >= k >= 1:
        raise ValueError(f"need n >= k >= 1, got n={n}, k={k}")
    McConfig(k, n, lambda_value, samples, seed, chunks)
    lam = float(lambda_value)
    weights = [
        (n - m, lam ** (m - k) * binomial(n, m) * stirling1_signed(m, k))
        for m in range(k, n + 1)
    ]

    def integrand(s):
        acc = np.zeros_like(s)
        for order, w in weights:
            if w:
                acc = acc + w * falling_factorial(s, order, lam)
        return acc

    exact = float(poly_eval(new_stirling1_unsigned_negated(n, k), Fraction(lam)))
    est, se, count = _run(k, integrand, samples, seed, chunks)
    return _report(est, se, exact, count)
