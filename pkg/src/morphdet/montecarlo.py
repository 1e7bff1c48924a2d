"""Symbol-level Monte-Carlo BER estimation with a minimum-error stopping rule.

All detectors see the same realizations (common random numbers).  The
randomness of symbol ``t`` at grid point ``g`` comes only from
``(master_seed, g, t)``, so batches can be cut anywhere and any single
symbol can be replayed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from statistics import NormalDist

import numpy as np

from . import detectors as det
from .bridge import QuantConfig
from .frontend import ImpulseResponse, convolve, design_receiver_filter
from .morphology import StructuringElement
from .noise import WORDS_PER_SAMPLE, LabeledNoise, NoiseParams, labeled_from_words, sample_labeled
from .streams import block_size, symbol_blocks, symbol_stream

FIRST_BATCH = 4096
MAX_BATCH = 1 << 16


@dataclass(frozen=True)
class Scenario:
    noise: NoiseParams
    quant: QuantConfig = field(default_factory=QuantConfig)
    se_length: int = 15
    amplitude: float = 1.0
    symbol_len: int = 70
    filter: ImpulseResponse | None = None
    detectors: tuple = det.DETECTORS
    master_seed: int = 0
    min_errors: int = 100
    max_symbols: int = 10**7

    def __post_init__(self):
        if self.symbol_len < 1:
            raise ValueError("symbol_len must be >= 1")
        if self.min_errors < 1:
            raise ValueError("min_errors must be >= 1")
        if self.max_symbols < self.min_errors:
            raise ValueError("max_symbols must be >= min_errors")
        unknown = set(self.detectors) - set(det.DETECTORS)
        if unknown or not self.detectors:
            raise ValueError(f"detectors must be a non-empty subset of {det.DETECTORS}, got {self.detectors}")
        # keep canonical order so outputs do not depend on how the set was spelled
        object.__setattr__(self, "detectors", tuple(d for d in det.DETECTORS if d in self.detectors))
        StructuringElement(self.se_length)
        if self.filter is None:
            object.__setattr__(self, "filter", design_receiver_filter(self.symbol_len))

    @property
    def se(self) -> StructuringElement:
        return StructuringElement(self.se_length)

    @property
    def hypotheses(self) -> det.HypothesisPair:
        return det.HypothesisPair.rectangular(self.symbol_len, self.amplitude)

    @property
    def template(self) -> np.ndarray:
        return convolve(self.hypotheses.plus, self.filter)

    @property
    def block_words(self) -> int:
        return block_size(1 + WORDS_PER_SAMPLE * self.symbol_len)


@dataclass(frozen=True)
class BerPoint:
    detector: str
    sigma2: float
    total_std: float
    symbols: int
    errors: int
    ber: float
    ci_low: float
    ci_high: float
    capped: bool


@dataclass(frozen=True)
class SymbolOutcome:
    truth: int
    decisions: dict
    r_raw: np.ndarray
    r_filtered: np.ndarray
    noise: LabeledNoise


def wilson_interval(errors: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if n <= 0:
        return 0.0, 1.0
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = errors / n
    denom = 1 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    low, high = max(0.0, centre - half), min(1.0, centre + half)
    # guard the ordering against rounding at p = 0 or 1
    return min(low, p), max(high, p)


def _polarity(word) -> np.ndarray:
    return np.where(np.asarray(word, dtype=np.uint64) >> np.uint64(63), 1, -1).astype(np.int8)


def _decide(scn: Scenario, r_raw, r_filt, labels) -> dict:
    out = {}
    for name in scn.detectors:
        if name == det.MORPH:
            out[name] = det.detect_morph_many(r_filt, scn.quant, scn.se)
        elif name == det.MAP_MIXTURE:
            out[name] = det.detect_map_mixture_many(r_raw, scn.hypotheses, scn.noise)
        elif name == det.MAP_GENIE:
            out[name] = det.detect_map_genie_many(r_raw, labels, scn.hypotheses, scn.noise)
        elif name == det.MATCHED:
            out[name] = det.detect_matched_filter_many(r_filt, scn.template)
    return out


def simulate_block(scn: Scenario, start: int, count: int, grid_index: int = 0):
    """Truth and per-detector decisions for symbols ``start .. start+count-1``."""
    words = symbol_blocks(scn.master_seed, grid_index, start, count, scn.block_words)
    truth = _polarity(words[:, 0])
    noise = labeled_from_words(scn.noise, words[:, 1 : 1 + WORDS_PER_SAMPLE * scn.symbol_len])
    r_raw = truth[:, None] * scn.amplitude + noise.samples
    needs_filter = det.MORPH in scn.detectors or det.MATCHED in scn.detectors
    r_filt = convolve(r_raw, scn.filter) if needs_filter else None
    return truth, _decide(scn, r_raw, r_filt, noise.labels)


def run_symbol(scn: Scenario, symbol_index: int, grid_index: int = 0) -> SymbolOutcome:
    """One symbol, replayed from its own stream, with its waveforms."""
    gen = symbol_stream(scn.master_seed, grid_index, symbol_index, scn.block_words)
    truth = int(_polarity(gen.bit_generator.random_raw(1))[0])
    noise = sample_labeled(scn.noise, scn.symbol_len, gen)
    r_raw = truth * scn.amplitude + noise.samples
    r_filt = convolve(r_raw, scn.filter)
    decisions = {k: int(v[0]) for k, v in _decide(scn, r_raw[None], r_filt[None], noise.labels[None]).items()}
    return SymbolOutcome(truth=truth, decisions=decisions, r_raw=r_raw, r_filtered=r_filt, noise=noise)


def run_ber_point(scn: Scenario, grid_index: int = 0) -> list[BerPoint]:
    """Simulate until every detector has ``min_errors`` errors or the symbol cap is hit."""
    errors = dict.fromkeys(scn.detectors, 0)
    symbols = 0
    batch = FIRST_BATCH
    while symbols < scn.max_symbols and min(errors.values()) < scn.min_errors:
        count = min(batch, scn.max_symbols - symbols)
        truth, decisions = simulate_block(scn, symbols, count, grid_index)
        for name, d in decisions.items():
            errors[name] += int(np.count_nonzero(d != truth))
        symbols += count
        batch = min(2 * batch, MAX_BATCH)

    capped = min(errors.values()) < scn.min_errors
    points = []
    for name in scn.detectors:
        low, high = wilson_interval(errors[name], symbols)
        points.append(
            BerPoint(
                detector=name,
                sigma2=scn.noise.sigma2,
                total_std=scn.noise.total_std,
                symbols=symbols,
                errors=errors[name],
                ber=errors[name] / symbols,
                ci_low=low,
                ci_high=high,
                capped=capped,
            )
        )
    return points


def sweep(scn: Scenario, sigma2_grid) -> dict[str, list[BerPoint]]:
    """One BER point per sigma2 value, keyed by detector and ordered by sigma2."""
    grid = [float(s) for s in sigma2_grid]
    if not grid:
        raise ValueError("sigma2 grid is empty")
    curves = {name: [] for name in scn.detectors}
    order = sorted(range(len(grid)), key=lambda i: grid[i])
    for i in order:
        point_scn = replace(scn, noise=replace(scn.noise, sigma2=grid[i]))
        for p in run_ber_point(point_scn, grid_index=i):
            curves[p.detector].append(p)
    return curves
