"""Morphological detection of binary symbols in epsilon-mixture impulsive noise."""

from .bridge import QuantConfig, image_to_signal, quantize, signal_to_image, signal_to_image_mirrored
from .detectors import (
    HypothesisPair,
    detect_map_genie,
    detect_map_mixture,
    detect_matched_filter,
    detect_morph,
)
from .frontend import ImpulseResponse, convolve, design_receiver_filter, load_filter
from .kernels import BACKEND
from .montecarlo import BerPoint, Scenario, run_ber_point, run_symbol, sweep, wilson_interval
from .morphology import BinaryImage, StructuringElement, close, dilate, erode, open, open_close
from .noise import LabeledNoise, NoiseParams, log_pdf, pdf, sample_labeled

__all__ = [
    "BACKEND",
    "BerPoint",
    "BinaryImage",
    "HypothesisPair",
    "ImpulseResponse",
    "LabeledNoise",
    "NoiseParams",
    "QuantConfig",
    "Scenario",
    "StructuringElement",
    "close",
    "convolve",
    "design_receiver_filter",
    "detect_map_genie",
    "detect_map_mixture",
    "detect_matched_filter",
    "detect_morph",
    "dilate",
    "erode",
    "image_to_signal",
    "load_filter",
    "log_pdf",
    "open",
    "open_close",
    "pdf",
    "quantize",
    "run_ber_point",
    "run_symbol",
    "sample_labeled",
    "signal_to_image",
    "signal_to_image_mirrored",
    "sweep",
    "wilson_interval",
]
