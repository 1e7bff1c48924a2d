"""Signal <-> filled-column image conversion.

A quantized sample ``q`` in ``[-V, V]`` becomes a column whose bottom
``q + V`` rows are set; reading the image back counts the set pixels of
each column and subtracts ``V``.  The mirrored image encodes ``-q`` and its
read-out is negated so that both passes estimate the same signal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .morphology import BinaryImage


@dataclass(frozen=True)
class QuantConfig:
    K: float = 10.0
    N: int = 300

    def __post_init__(self):
        if not (self.K > 0 and np.isfinite(self.K)):
            raise ValueError(f"scale factor K must be positive and finite, got {self.K}")
        if int(self.N) != self.N or self.N < 4 or self.N % 2:
            raise ValueError(f"number of levels N must be an even integer >= 4, got {self.N}")

    @property
    def V(self) -> int:
        return self.N // 2


def quantize(s, cfg: QuantConfig) -> np.ndarray:
    """``clamp(round(s*K), -V, V)`` with halves rounded away from zero."""
    s = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(s)):
        raise ValueError("cannot quantize non-finite samples")
    x = s * cfg.K
    q = np.sign(x) * np.floor(np.abs(x) + 0.5)
    return np.clip(q, -cfg.V, cfg.V).astype(np.int64)


def _check_range(q, cfg):
    q = np.asarray(q, dtype=np.int64)
    if q.ndim != 1:
        raise ValueError("expected a 1-D quantized signal")
    if q.size and (q.min() < -cfg.V or q.max() > cfg.V):
        raise ValueError(f"quantized values must lie in [-{cfg.V}, {cfg.V}]")
    return q


def _filled(heights, n_levels) -> BinaryImage:
    rows = np.arange(n_levels)[:, None]
    return BinaryImage(rows < heights[None, :])


def signal_to_image(q, cfg: QuantConfig) -> BinaryImage:
    q = _check_range(q, cfg)
    return _filled(q + cfg.V, cfg.N)


def signal_to_image_mirrored(q, cfg: QuantConfig) -> BinaryImage:
    q = _check_range(q, cfg)
    return _filled(cfg.V - q, cfg.N)


def image_to_signal(img: BinaryImage, cfg: QuantConfig, negate: bool = False) -> np.ndarray:
    if img.height != cfg.N:
        raise ValueError(f"image height {img.height} does not match N={cfg.N}")
    raw = img.bits.sum(axis=0, dtype=np.int64) - cfg.V
    return -raw if negate else raw


def is_filled(img: BinaryImage) -> bool:
    """True when every column is a bottom-anchored contiguous run of ones."""
    bits = img.bits
    return bool(np.all(bits[1:] <= bits[:-1]))
