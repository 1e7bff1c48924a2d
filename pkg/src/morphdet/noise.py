"""Epsilon-mixture Gaussian noise: density, log-density and labeled sampling.

A sample is background noise (std ``sigma1``) with probability
``1 - epsilon`` and background-plus-impulse noise (std ``sigma2``) with
probability ``epsilon``.  Samples carry a label: 1 for the background
component, 0 for the impulsive one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_INV_2_53 = 2.0**-53

#: uint64 words consumed per noise sample (component choice + gaussian draw)
WORDS_PER_SAMPLE = 2


@dataclass(frozen=True)
class NoiseParams:
    epsilon: float
    sigma1: float
    sigma2: float

    def __post_init__(self):
        for name in ("epsilon", "sigma1", "sigma2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if self.sigma1 <= 0:
            raise ValueError(f"sigma1 must be positive, got {self.sigma1}")
        if self.sigma2 < self.sigma1:
            raise ValueError(f"sigma2 ({self.sigma2}) must be >= sigma1 ({self.sigma1})")

    @property
    def variance(self) -> float:
        """Variance of the mixture, (1-eps)*sigma1**2 + eps*sigma2**2."""
        return (1.0 - self.epsilon) * self.sigma1**2 + self.epsilon * self.sigma2**2

    @property
    def total_std(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class LabeledNoise:
    samples: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        if np.shape(self.samples) != np.shape(self.labels):
            raise ValueError("samples and labels must have the same shape")


def gaussian_logpdf(x, sigma):
    x = np.asarray(x, dtype=float)
    return -0.5 * (x / sigma) ** 2 - math.log(sigma) - _LOG_SQRT_2PI


def _check_finite(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("noise density is undefined for non-finite arguments")
    return x


def _log_weights(params: NoiseParams):
    with np.errstate(divide="ignore"):
        return np.log1p(-params.epsilon), np.log(params.epsilon)


def log_pdf(params: NoiseParams, x):
    """Log-density of the mixture, stable far into the tails.

    The two component log-densities are combined with a max-shifted
    log-sum-exp, so the result stays finite where the direct density
    underflows.
    """
    x = _check_finite(x)
    lw1, lw2 = _log_weights(params)
    out = np.logaddexp(lw1 + gaussian_logpdf(x, params.sigma1), lw2 + gaussian_logpdf(x, params.sigma2))
    return out if out.ndim else float(out)


def pdf(params: NoiseParams, x):
    x = _check_finite(x)
    e = params.epsilon
    p1 = np.exp(gaussian_logpdf(x, params.sigma1))
    p2 = np.exp(gaussian_logpdf(x, params.sigma2))
    out = (1.0 - e) * p1 + e * p2
    return out if out.ndim else float(out)


def words_to_uniform(words: np.ndarray) -> np.ndarray:
    """Map raw uint64 words to doubles strictly inside (0, 1)."""
    return ((np.asarray(words, dtype=np.uint64) >> np.uint64(11)).astype(np.float64) + 0.5) * _INV_2_53


def labeled_from_words(params: NoiseParams, words: np.ndarray) -> LabeledNoise:
    """Turn raw words into labeled noise.

    ``words`` has shape (..., 2*n): the first ``n`` words of the last axis
    select the component, the remaining ``n`` give the gaussian draw by
    inverse-CDF.  Every sample consumes exactly two words, which keeps
    per-symbol stream offsets fixed.
    """
    words = np.asarray(words, dtype=np.uint64)
    n = words.shape[-1] // WORDS_PER_SAMPLE
    if words.shape[-1] != WORDS_PER_SAMPLE * n:
        raise ValueError("need an even number of words per row")
    u_comp = words_to_uniform(words[..., :n])
    z = ndtri(words_to_uniform(words[..., n:]))
    impulsive = u_comp < params.epsilon
    samples = np.where(impulsive, params.sigma2, params.sigma1) * z
    return LabeledNoise(samples=samples, labels=(~impulsive).astype(np.int8))


def sample_labeled(params: NoiseParams, n: int, stream: np.random.Generator) -> LabeledNoise:
    """Draw ``n`` independent labeled mixture samples from ``stream``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    words = stream.bit_generator.random_raw(WORDS_PER_SAMPLE * n)
    return labeled_from_words(params, np.asarray(words, dtype=np.uint64).reshape(-1))
