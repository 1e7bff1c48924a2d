"""Pure numpy implementation of the packed morphology kernels.

Same contract as the compiled ``_kernels`` extension; used when the
extension is not built or when ``MORPHDET_BACKEND=python``.
"""

import numpy as np

BACKEND = "python"

_ALL_ONES = np.uint64(0xFFFFFFFFFFFFFFFF)


def _window(planes: np.ndarray, length: int, conj: bool) -> np.ndarray:
    planes = np.asarray(planes, dtype=np.uint64)
    r = length // 2
    ident = _ALL_ONES if conj else np.uint64(0)
    pad = [(0, 0)] * (planes.ndim - 1) + [(r, r)]
    buf = np.pad(planes, pad, constant_values=ident)
    op = np.bitwise_and if conj else np.bitwise_or
    n = buf.shape[-1]
    p = 1
    while 2 * p <= length:
        m = n - p
        buf = op(buf[..., :m], buf[..., p : p + m])
        n = m
        p *= 2
    width = planes.shape[-1]
    return op(buf[..., :width], buf[..., length - p : length - p + width])


def erode_planes(planes, length: int) -> np.ndarray:
    """AND over a centered window of ``length`` columns; outside columns are all-ones."""
    return _window(planes, length, True)


def dilate_planes(planes, length: int) -> np.ndarray:
    """OR over a centered window of ``length`` columns; outside columns are all-zeros."""
    return _window(planes, length, False)


def pack_heights(heights: np.ndarray, n_levels: int) -> np.ndarray:
    """Filled columns as word planes, shape (batch, n_words, width)."""
    heights = np.asarray(heights, dtype=np.int64)
    n_words = (n_levels + 63) // 64
    offsets = 64 * np.arange(n_words, dtype=np.int64)
    c = np.clip(heights[:, None, :] - offsets[None, :, None], 0, 64)
    partial = (np.uint64(1) << np.minimum(c, 63).astype(np.uint64)) - np.uint64(1)
    return np.where(c >= 64, _ALL_ONES, partial)


def open_close_heights(heights, n_levels: int, length: int) -> np.ndarray:
    """Open-close filter of filled-column images given by their column heights."""
    planes = pack_heights(heights, n_levels)
    planes = _window(planes, length, True)
    planes = _window(planes, length, False)
    planes = _window(planes, length, False)
    planes = _window(planes, length, True)
    return np.bitwise_count(planes).sum(axis=1, dtype=np.int64)
