"""Binary symbol decision rules.

Every detector has a single-symbol form returning +1 / -1 and a ``*_many``
form taking a (batch, M) array.  Ties in the decision statistic resolve to
+1.  The MAP rules read the unfiltered samples, the morphological and
matched-filter rules read the receiver-filter output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .bridge import QuantConfig, quantize
from .morphology import StructuringElement
from .noise import NoiseParams, gaussian_logpdf, log_pdf

MORPH = "morph"
MAP_MIXTURE = "map_mixture"
MAP_GENIE = "map_genie"
MATCHED = "matched"
DETECTORS = (MORPH, MAP_MIXTURE, MAP_GENIE, MATCHED)


@dataclass(frozen=True)
class HypothesisPair:
    plus: np.ndarray
    minus: np.ndarray

    def __post_init__(self):
        plus = np.asarray(self.plus, dtype=float)
        minus = np.asarray(self.minus, dtype=float)
        if plus.shape != minus.shape or plus.ndim != 1:
            raise ValueError("hypothesis waveforms must be 1-D and of equal length")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    @classmethod
    def rectangular(cls, symbol_len: int, amplitude: float = 1.0) -> "HypothesisPair":
        return cls(np.full(symbol_len, float(amplitude)), np.full(symbol_len, -float(amplitude)))

    @property
    def difference(self) -> np.ndarray:
        return self.plus - self.minus


@dataclass(frozen=True)
class MorphTrace:
    """Intermediate signals of one morphological decision."""

    decision: int
    q: np.ndarray
    s1: np.ndarray
    s2: np.ndarray

    @property
    def s_r(self) -> np.ndarray:
        return (self.s1 + self.s2) / 2


def _sign(stat) -> np.ndarray:
    return np.where(stat >= 0, 1, -1).astype(np.int8)


def morph_passes(r, cfg: QuantConfig, se: StructuringElement):
    """Quantize and run both open-close passes; returns (q, s1, s2) as (batch, M) ints."""
    q = quantize(np.atleast_2d(r), cfg)
    V = cfg.V
    s1 = kernels.open_close_heights(q + V, cfg.N, se.length) - V
    s2 = V - kernels.open_close_heights(V - q, cfg.N, se.length)
    return q, s1, s2


def detect_morph_many(r, cfg: QuantConfig, se: StructuringElement) -> np.ndarray:
    _, s1, s2 = morph_passes(r, cfg, se)
    # sign of sum((s1+s2)/2) equals sign of the integer sum
    return _sign((s1 + s2).sum(axis=-1))


def detect_morph(r, cfg: QuantConfig, se: StructuringElement) -> MorphTrace:
    r = np.asarray(r, dtype=float)
    if r.ndim != 1:
        raise ValueError("detect_morph takes one symbol; use detect_morph_many for batches")
    q, s1, s2 = morph_passes(r, cfg, se)
    decision = int(_sign((s1 + s2).sum(axis=-1))[0])
    return MorphTrace(decision=decision, q=q[0], s1=s1[0], s2=s2[0])


def detect_map_mixture_many(r_raw, hyp: HypothesisPair, params: NoiseParams) -> np.ndarray:
    r_raw = np.atleast_2d(np.asarray(r_raw, dtype=float))
    if r_raw.shape[-1] != hyp.plus.size:
        raise ValueError("received waveform and hypotheses differ in length")
    ll_plus = log_pdf(params, r_raw - hyp.plus).sum(axis=-1)
    ll_minus = log_pdf(params, r_raw - hyp.minus).sum(axis=-1)
    return _sign(ll_plus - ll_minus)


def detect_map_mixture(r_raw, hyp: HypothesisPair, params: NoiseParams) -> int:
    return int(detect_map_mixture_many(r_raw, hyp, params)[0])


def _genie_loglik(xi, labels, params: NoiseParams, lw1, lw2):
    return np.where(
        labels == 1,
        lw1 + gaussian_logpdf(xi, params.sigma1),
        lw2 + gaussian_logpdf(xi, params.sigma2),
    ).sum(axis=-1)


def detect_map_genie_many(r_raw, labels, hyp: HypothesisPair, params: NoiseParams) -> np.ndarray:
    """MAP decision given the per-sample component indicators.

    Label 1 selects the background factor ``(1-eps)*phi(x, sigma1)``,
    label 0 the impulsive factor ``eps*phi(x, sigma2)``.  The weights are
    kept as written even though they cancel between the hypotheses.
    """
    r_raw = np.atleast_2d(np.asarray(r_raw, dtype=float))
    labels = np.atleast_2d(np.asarray(labels))
    if labels.shape != r_raw.shape:
        raise ValueError("labels must align with the received samples")
    if not ((labels == 0) | (labels == 1)).all():
        raise ValueError("component labels must be 0 or 1")
    if r_raw.shape[-1] != hyp.plus.size:
        raise ValueError("received waveform and hypotheses differ in length")
    with np.errstate(divide="ignore"):
        lw1, lw2 = np.log1p(-params.epsilon), np.log(params.epsilon)
    ll_plus = _genie_loglik(r_raw - hyp.plus, labels, params, lw1, lw2)
    ll_minus = _genie_loglik(r_raw - hyp.minus, labels, params, lw1, lw2)
    with np.errstate(invalid="ignore"):
        return np.where(ll_plus >= ll_minus, 1, -1).astype(np.int8)


def detect_map_genie(r_raw, labels, hyp: HypothesisPair, params: NoiseParams) -> int:
    return int(detect_map_genie_many(r_raw, labels, hyp, params)[0])


def detect_matched_filter_many(r, template) -> np.ndarray:
    r = np.atleast_2d(np.asarray(r, dtype=float))
    template = np.asarray(template, dtype=float)
    if r.shape[-1] != template.size:
        raise ValueError("received waveform and template differ in length")
    return _sign(r @ template)


def detect_matched_filter(r, template) -> int:
    return int(detect_matched_filter_many(r, template)[0])
