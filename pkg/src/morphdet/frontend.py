"""Receiver input filter: unit-DC-gain low-pass design, file loading and convolution."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class ImpulseResponse:
    taps: np.ndarray
    peak_index: int

    def __post_init__(self):
        taps = np.asarray(self.taps, dtype=float)
        if taps.ndim != 1 or taps.size < 1:
            raise ValueError("filter needs at least one tap")
        if not np.all(np.isfinite(taps)):
            raise ValueError("filter taps must be finite")
        if abs(taps.sum() - 1.0) > 1e-12:
            raise ValueError(f"filter taps must sum to 1, got {taps.sum()!r}")
        if not 0 <= self.peak_index < taps.size:
            raise ValueError("peak_index out of range")
        object.__setattr__(self, "taps", taps)

    def __len__(self):
        return self.taps.size

    @classmethod
    def from_taps(cls, taps) -> "ImpulseResponse":
        """Normalize arbitrary taps to unit sum and locate the peak."""
        taps = np.asarray(taps, dtype=float)
        if taps.ndim != 1 or taps.size == 0:
            raise ValueError("filter needs at least one tap")
        total = taps.sum()
        if not np.isfinite(total) or total == 0:
            raise ValueError("filter taps must have a finite, non-zero sum")
        taps = taps / total
        # remove residual rounding so the sum is 1 to machine precision
        taps[np.argmax(np.abs(taps))] += 1.0 - taps.sum()
        return cls(taps=taps, peak_index=int(np.argmax(np.abs(taps))))


def effective_length(taps) -> int:
    """Shortest contiguous run of taps holding at least 99% of the total mass."""
    mass = np.abs(np.asarray(taps, dtype=float))
    total = mass.sum()
    csum = np.concatenate([[0.0], np.cumsum(mass)])
    target = 0.99 * total * (1 - 1e-12)
    n = mass.size
    for width in range(1, n + 1):
        if np.max(csum[width:] - csum[: n + 1 - width]) >= target:
            return width
    return n


def hann_taps(length: int) -> np.ndarray:
    """Positive raised-cosine window without the zero-valued end points."""
    k = np.arange(1, length + 1)
    return np.sin(np.pi * k / (length + 1)) ** 2


def design_receiver_filter(symbol_len: int, significant_fraction: float = 0.1) -> ImpulseResponse:
    """Odd-length Hann low-pass with unit DC gain.

    The window length is chosen so the effective (99% mass) length is as
    close as possible to ``round(significant_fraction * symbol_len)``.
    """
    if symbol_len < 10:
        raise ValueError("symbol_len must be at least 10")
    if not 0 < significant_fraction < 1:
        raise ValueError("significant_fraction must lie in (0, 1)")
    target = int(math.floor(significant_fraction * symbol_len + 0.5))
    if target < 1:
        raise ValueError(
            f"significant_fraction={significant_fraction} gives an empty filter for symbol_len={symbol_len}"
        )
    best = None
    for length in range(max(1, target - 1) | 1, 2 * target + 4, 2):
        miss = abs(effective_length(hann_taps(length)) - target)
        if best is None or miss < best[0]:
            best = (miss, length)
        if miss == 0:
            break
    taps = hann_taps(best[1])
    taps /= taps.sum()
    taps[best[1] // 2] += 1.0 - taps.sum()
    return ImpulseResponse(taps=taps, peak_index=best[1] // 2)


def load_filter(path) -> ImpulseResponse:
    """Read one tap per line; blank lines and ``#`` comments are skipped."""
    taps = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            taps.append(float(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number: {line!r}") from None
    return ImpulseResponse.from_taps(taps)


def convolve(x, h: ImpulseResponse) -> np.ndarray:
    """Peak-aligned convolution over the last axis, zero outside the input.

    ``y[i] = sum_k h[k] * x[i - k + peak]``; the output has the input's shape.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] == 0:
        raise ValueError("cannot filter an empty signal")
    n = x.shape[-1]
    taps = h.taps
    y = np.zeros_like(x)
    for k, tap in enumerate(taps):
        shift = h.peak_index - k
        # y[i] += tap * x[i + shift]
        lo, hi = max(0, -shift), min(n, n - shift)
        if lo < hi:
            y[..., lo:hi] += tap * x[..., lo + shift : hi + shift]
    return y
