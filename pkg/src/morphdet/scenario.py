"""Plain ``key = value`` scenario files.

Example::

    # epsilon-noise, support point of the sweep
    epsilon = 0.01
    sigma1 = 2
    sigma2_grid = 10, 20, 40
    amplitude = 1
    M = 70
    N = 300
    K = 10
    se_length = 15
    detectors = morph, map_mixture, map_genie, matched
    min_errors = 100
    max_symbols = 10000000
    seed = 1
    filter_file = taps.txt      # optional, relative to this file
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .bridge import QuantConfig
from .detectors import DETECTORS
from .frontend import design_receiver_filter, load_filter
from .montecarlo import Scenario
from .noise import NoiseParams

FLOAT_KEYS = ("epsilon", "sigma1", "amplitude", "K")
INT_KEYS = ("M", "N", "se_length", "min_errors", "max_symbols", "seed")
LIST_KEYS = ("sigma2_grid", "detectors")
OPTIONAL_KEYS = ("filter_file",)
REQUIRED_KEYS = FLOAT_KEYS + INT_KEYS + LIST_KEYS


class ScenarioError(ValueError):
    def __init__(self, path, lineno, message):
        where = f"{path}:{lineno}" if lineno else str(path)
        super().__init__(f"{where}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class ScenarioSpec:
    scenario: Scenario
    sigma2_grid: tuple


def _parse_float(text):
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("not a finite number")
    return value


def _parse_int(text):
    try:
        return int(text)
    except ValueError:
        value = _parse_float(text)
    if not value.is_integer():
        raise ValueError("not an integer")
    return int(value)


def read_raw(path) -> dict:
    """Parse the file into ``{key: (value_text, lineno)}``."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioError(path, None, f"cannot read scenario file ({exc.strerror})") from None
    entries = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, value = body.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ScenarioError(path, lineno, f"expected 'key = value', got {line.strip()!r}")
        if key not in REQUIRED_KEYS + OPTIONAL_KEYS:
            raise ScenarioError(path, lineno, f"unknown key {key!r}")
        if key in entries:
            raise ScenarioError(path, lineno, f"duplicate key {key!r}")
        entries[key] = (value, lineno)
    missing = [k for k in REQUIRED_KEYS if k not in entries]
    if missing:
        raise ScenarioError(path, None, f"missing required keys: {', '.join(missing)}")
    return entries


def load_scenario(path, **overrides) -> ScenarioSpec:
    """Build a scenario from a file; non-None ``overrides`` replace parsed values.

    Recognized overrides: ``seed``, ``min_errors``, ``max_symbols``.
    """
    path = Path(path)
    entries = read_raw(path)
    values = {}
    for key, (text, lineno) in entries.items():
        try:
            if key in FLOAT_KEYS:
                values[key] = _parse_float(text)
            elif key in INT_KEYS:
                values[key] = _parse_int(text)
            elif key == "sigma2_grid":
                values[key] = tuple(_parse_float(t) for t in text.split(","))
            elif key == "detectors":
                names = tuple(t.strip() for t in text.split(","))
                bad = [n for n in names if n not in DETECTORS]
                if bad:
                    raise ValueError(f"unknown detector(s) {bad}; choose from {', '.join(DETECTORS)}")
                values[key] = names
            else:
                values[key] = text
        except ValueError as exc:
            raise ScenarioError(path, lineno, f"bad value for {key!r}: {text!r} ({exc})") from None
    for key, value in overrides.items():
        if value is not None:
            values[key] = value

    def line_of(*keys):
        return next((entries[k][1] for k in keys if k in entries), None)

    grid = values["sigma2_grid"]
    try:
        noise = NoiseParams(values["epsilon"], values["sigma1"], min(grid))
        for s2 in grid:
            NoiseParams(values["epsilon"], values["sigma1"], s2)
    except ValueError as exc:
        raise ScenarioError(path, line_of("sigma2_grid"), str(exc)) from None
    try:
        quant = QuantConfig(K=values["K"], N=values["N"])
    except ValueError as exc:
        raise ScenarioError(path, line_of("K", "N"), str(exc)) from None
    try:
        if "filter_file" in values:
            filt = load_filter(path.parent / values["filter_file"])
        else:
            filt = design_receiver_filter(values["M"])
    except (OSError, ValueError) as exc:
        raise ScenarioError(path, line_of("filter_file", "M"), f"receiver filter: {exc}") from None
    try:
        scenario = Scenario(
            noise=noise,
            quant=quant,
            se_length=values["se_length"],
            amplitude=values["amplitude"],
            symbol_len=values["M"],
            filter=filt,
            detectors=values["detectors"],
            master_seed=values["seed"],
            min_errors=values["min_errors"],
            max_symbols=values["max_symbols"],
        )
    except ValueError as exc:
        raise ScenarioError(path, None, str(exc)) from None
    return ScenarioSpec(scenario=scenario, sigma2_grid=grid)
