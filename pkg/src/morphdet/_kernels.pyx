# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled bit-packed kernels for horizontal line morphology.

Images are stored column-packed: each time sample (column) holds its
amplitude levels as bits of ``ceil(height / 64)`` uint64 words.  A
horizontal line structuring element then acts on one word plane at a time
as a sliding AND/OR across neighbouring columns, which is evaluated by
window doubling in O(width * log(length)) word operations.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

BACKEND = "cython"

cdef uint64_t ALL_ONES = <uint64_t>0xFFFFFFFFFFFFFFFF


cdef inline void _window(const uint64_t* src, uint64_t* dst, Py_ssize_t width,
                         Py_ssize_t length, bint conj, uint64_t* buf) noexcept nogil:
    # buf must hold width + length - 1 words
    cdef Py_ssize_t r = length // 2
    cdef Py_ssize_t n = width + 2 * r
    cdef Py_ssize_t i, k, p
    cdef uint64_t ident = ALL_ONES if conj else 0
    for i in range(r):
        buf[i] = ident
        buf[width + r + i] = ident
    for i in range(width):
        buf[r + i] = src[i]
    p = 1
    while 2 * p <= length:
        if conj:
            for k in range(n - 2 * p + 1):
                buf[k] = buf[k] & buf[k + p]
        else:
            for k in range(n - 2 * p + 1):
                buf[k] = buf[k] | buf[k + p]
        p *= 2
    if conj:
        for i in range(width):
            dst[i] = buf[i] & buf[i + length - p]
    else:
        for i in range(width):
            dst[i] = buf[i] | buf[i + length - p]


cdef int _apply_planes(uint64_t[:, ::1] planes, uint64_t[:, ::1] out,
                       Py_ssize_t length, bint conj) except -1:
    cdef Py_ssize_t n_planes = planes.shape[0]
    cdef Py_ssize_t width = planes.shape[1]
    cdef Py_ssize_t j
    cdef uint64_t* buf = <uint64_t*>malloc((width + length) * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    with nogil:
        for j in range(n_planes):
            _window(&planes[j, 0], &out[j, 0], width, length, conj, buf)
    free(buf)
    return 0


def erode_planes(planes, Py_ssize_t length):
    """AND over a centered window of ``length`` columns; outside columns are all-ones."""
    src = np.ascontiguousarray(planes, dtype=np.uint64)
    out = np.empty_like(src)
    width = src.shape[src.ndim - 1]
    if src.size:
        _apply_planes(src.reshape(-1, width), out.reshape(-1, width), length, True)
    return out


def dilate_planes(planes, Py_ssize_t length):
    """OR over a centered window of ``length`` columns; outside columns are all-zeros."""
    src = np.ascontiguousarray(planes, dtype=np.uint64)
    out = np.empty_like(src)
    width = src.shape[src.ndim - 1]
    if src.size:
        _apply_planes(src.reshape(-1, width), out.reshape(-1, width), length, False)
    return out


def open_close_heights(heights, Py_ssize_t n_levels, Py_ssize_t length):
    """Open-close filter of filled-column images given by their column heights.

    ``heights`` has shape (batch, width) with values in [0, n_levels]; the
    result holds the column popcounts of the filtered images.
    """
    cdef int64_t[:, ::1] h = np.ascontiguousarray(heights, dtype=np.int64)
    cdef Py_ssize_t batch = h.shape[0]
    cdef Py_ssize_t width = h.shape[1]
    cdef Py_ssize_t n_words = (n_levels + 63) // 64
    result = np.empty((batch, width), dtype=np.int64)
    cdef int64_t[:, ::1] res = result
    if batch == 0 or width == 0:
        return result

    cdef uint64_t* a = <uint64_t*>malloc(n_words * width * sizeof(uint64_t))
    cdef uint64_t* b = <uint64_t*>malloc(n_words * width * sizeof(uint64_t))
    cdef uint64_t* buf = <uint64_t*>malloc((width + length) * sizeof(uint64_t))
    if a == NULL or b == NULL or buf == NULL:
        free(a); free(b); free(buf)
        raise MemoryError()

    cdef Py_ssize_t s, i, w, base
    cdef int64_t c, total
    with nogil:
        for s in range(batch):
            for w in range(n_words):
                base = w * width
                for i in range(width):
                    c = h[s, i] - 64 * w
                    if c >= 64:
                        a[base + i] = ALL_ONES
                    elif c <= 0:
                        a[base + i] = 0
                    else:
                        a[base + i] = ((<uint64_t>1) << c) - 1
            # opening then closing: erode, dilate, dilate, erode
            for w in range(n_words):
                base = w * width
                _window(a + base, b + base, width, length, True, buf)
                _window(b + base, a + base, width, length, False, buf)
                _window(a + base, b + base, width, length, False, buf)
                _window(b + base, a + base, width, length, True, buf)
            for i in range(width):
                total = 0
                for w in range(n_words):
                    total += __builtin_popcountll(a[w * width + i])
                res[s, i] = total
    free(a); free(b); free(buf)
    return result
