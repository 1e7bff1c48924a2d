"""Flat binary morphology with a horizontal line structuring element.

Images are ``height x width`` boolean grids: rows are amplitude levels
(row 0 at the bottom), columns are time samples.  Pixels outside the grid
count as 1 for erosion and 0 for dilation, which keeps erosion and
dilation dual under complementation and leaves all-ones / all-zeros
images fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels


@dataclass(frozen=True)
class StructuringElement:
    """Horizontal line of ``length`` pixels centered on its middle pixel."""

    length: int = 15

    def __post_init__(self):
        if int(self.length) != self.length or self.length < 1:
            raise ValueError(f"structuring element length must be a positive integer, got {self.length}")
        if self.length % 2 == 0:
            raise ValueError(f"structuring element length must be odd, got {self.length}")

    @property
    def origin(self) -> int:
        return self.length // 2


@dataclass(frozen=True, eq=False)
class BinaryImage:
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 2 or bits.shape[0] < 1 or bits.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-D grid, got shape {bits.shape}")
        if bits.dtype != bool:
            if not np.isin(bits, (0, 1)).all():
                raise ValueError("image cells must be 0 or 1")
            bits = bits.astype(bool)
        object.__setattr__(self, "bits", bits)

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    def __eq__(self, other):
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))

    def __le__(self, other: "BinaryImage") -> bool:
        """Pixelwise inclusion."""
        return bool(np.all(self.bits <= other.bits))

    def complement(self) -> "BinaryImage":
        return BinaryImage(~self.bits)

    def to_pbm(self) -> str:
        """Plain PBM (P1) text, top row first so the image displays upright."""
        rows = "\n".join(" ".join("1" if b else "0" for b in row) for row in self.bits[::-1])
        return f"P1\n{self.width} {self.height}\n{rows}\n"

    def save_pbm(self, path) -> None:
        Path(path).write_text(self.to_pbm())


def _pack(img: BinaryImage) -> np.ndarray:
    # (n_words, width) uint64 planes, bit b of plane w is row 64*w + b
    n_words = (img.height + 63) // 64
    padded = np.zeros((n_words * 64, img.width), dtype=bool)
    padded[: img.height] = img.bits
    bytes_ = np.packbits(padded.reshape(n_words, 64, img.width), axis=1, bitorder="little")
    return np.ascontiguousarray(bytes_.transpose(0, 2, 1)).view(np.uint64).reshape(n_words, img.width)


def _unpack(planes: np.ndarray, height: int) -> BinaryImage:
    n_words, width = planes.shape
    bytes_ = np.ascontiguousarray(planes).view(np.uint8).reshape(n_words, width, 8).transpose(0, 2, 1)
    bits = np.unpackbits(bytes_, axis=1, bitorder="little").reshape(n_words * 64, width)
    return BinaryImage(bits[:height].astype(bool))


def erode(img: BinaryImage, se: StructuringElement) -> BinaryImage:
    return _unpack(kernels.erode_planes(_pack(img), se.length), img.height)


def dilate(img: BinaryImage, se: StructuringElement) -> BinaryImage:
    return _unpack(kernels.dilate_planes(_pack(img), se.length), img.height)


def open(img: BinaryImage, se: StructuringElement) -> BinaryImage:  # noqa: A001
    """Opening: removes horizontal foreground runs shorter than the line."""
    planes = kernels.erode_planes(_pack(img), se.length)
    return _unpack(kernels.dilate_planes(planes, se.length), img.height)


def close(img: BinaryImage, se: StructuringElement) -> BinaryImage:
    """Closing: fills horizontal background gaps shorter than the line."""
    planes = kernels.dilate_planes(_pack(img), se.length)
    return _unpack(kernels.erode_planes(planes, se.length), img.height)


def open_close(img: BinaryImage, se: StructuringElement) -> BinaryImage:
    """Closing of the opening; the impulse-removing filter of the detector."""
    planes = _pack(img)
    for op in (kernels.erode_planes, kernels.dilate_planes, kernels.dilate_planes, kernels.erode_planes):
        planes = op(planes, se.length)
    return _unpack(planes, img.height)
