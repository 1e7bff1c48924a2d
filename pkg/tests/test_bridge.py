import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morphdet.bridge import (
    QuantConfig,
    image_to_signal,
    is_filled,
    quantize,
    signal_to_image,
    signal_to_image_mirrored,
)
from morphdet.morphology import BinaryImage, StructuringElement, open_close

CFG = QuantConfig(K=10, N=300)


def q_signals(cfg=CFG, min_size=1, max_size=70):
    return st.lists(st.integers(-cfg.V, cfg.V), min_size=min_size, max_size=max_size).map(np.array)


def test_quant_config():
    assert CFG.V == 150
    for bad in (dict(N=301), dict(N=2), dict(K=0), dict(K=-1), dict(K=float("inf"))):
        with pytest.raises(ValueError):
            QuantConfig(**{"K": 10, "N": 300, **bad})


def test_quantize_examples():
    assert quantize([1.0], CFG)[0] == 10
    assert quantize([0.0], CFG)[0] == 0
    assert quantize([17.26], CFG)[0] == 150
    assert quantize([-17.26], CFG)[0] == -150
    np.testing.assert_array_equal(quantize([0.05, -0.05, 0.15, -0.25, 0.04], CFG), [1, -1, 2, -3, 0])


def test_quantize_is_odd(rng):
    s = rng.normal(scale=20, size=1000)
    np.testing.assert_array_equal(quantize(-s, CFG), -quantize(s, CFG))


def test_quantize_rejects_nonfinite():
    with pytest.raises(ValueError):
        quantize([np.nan], CFG)


def test_image_examples():
    m = 70
    np.testing.assert_array_equal(signal_to_image(np.full(m, 150), CFG).bits, True)
    np.testing.assert_array_equal(signal_to_image(np.full(m, -150), CFG).bits, False)
    img = signal_to_image(np.zeros(m, int), CFG)
    assert (img.width, img.height) == (70, 300)
    np.testing.assert_array_equal(img.bits.sum(axis=0), 150)
    np.testing.assert_array_equal(signal_to_image_mirrored(np.zeros(m, int), CFG).bits, img.bits)
    assert not signal_to_image_mirrored(np.array([150]), CFG).bits.any()
    np.testing.assert_array_equal(image_to_signal(BinaryImage(np.ones((300, 5), bool)), CFG), 150)


def test_out_of_range_rejected():
    with pytest.raises(ValueError):
        signal_to_image(np.array([151]), CFG)
    with pytest.raises(ValueError):
        signal_to_image_mirrored(np.array([-151]), CFG)
    with pytest.raises(ValueError):
        image_to_signal(BinaryImage(np.ones((10, 5), bool)), CFG)


@pytest.mark.parametrize("cfg", [CFG, QuantConfig(K=3, N=4), QuantConfig(K=1, N=130)])
def test_round_trip_exhaustive(cfg):
    q = np.arange(-cfg.V, cfg.V + 1)
    for value in q:
        col = np.array([value])
        assert image_to_signal(signal_to_image(col, cfg), cfg)[0] == value
        assert image_to_signal(signal_to_image_mirrored(col, cfg), cfg, negate=True)[0] == value


def test_round_trip_random(rng):
    for _ in range(1000):
        q = rng.integers(-150, 151, size=70)
        np.testing.assert_array_equal(image_to_signal(signal_to_image(q, CFG), CFG), q)
        np.testing.assert_array_equal(image_to_signal(signal_to_image_mirrored(q, CFG), CFG, negate=True), q)


@given(q_signals())
def test_mirror_is_complemented_flip(q):
    flipped = signal_to_image(q, CFG).bits[::-1]
    np.testing.assert_array_equal(signal_to_image_mirrored(q, CFG).bits, ~flipped)


@given(q_signals(), st.integers(0, 300))
def test_monotone_in_q(q, bump):
    q2 = np.minimum(q + bump, CFG.V)
    assert signal_to_image(q, CFG) <= signal_to_image(q2, CFG)


@settings(max_examples=200, deadline=None)
@given(q_signals(min_size=1, max_size=70), st.sampled_from([1, 3, 5, 15]))
def test_open_close_keeps_columns_filled(q, n):
    for img in (signal_to_image(q, CFG), signal_to_image_mirrored(q, CFG)):
        assert is_filled(img)
        assert is_filled(open_close(img, StructuringElement(n)))


def test_is_filled_detects_holes():
    bits = np.zeros((4, 1), bool)
    bits[[0, 2], 0] = True
    assert not is_filled(BinaryImage(bits))
