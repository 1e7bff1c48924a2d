"""Compare the compiled and numpy morphology kernels.

Usage: python3 benchmarks/bench_kernels.py [--batch 4096] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from morphdet import _kernels_py, kernels
from morphdet.bridge import QuantConfig
from morphdet.detectors import detect_morph_many
from morphdet.morphology import StructuringElement

try:
    from morphdet import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

NAMES = ("erode_planes", "dilate_planes", "open_close_heights")


def use(impl):
    for name in NAMES:
        setattr(kernels, name, getattr(impl, name))


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=4096)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    cfg, se = QuantConfig(K=10, N=300), StructuringElement(15)
    rng = np.random.default_rng(0)
    r = rng.choice([-1.0, 1.0], size=(args.batch, 1)) + rng.normal(scale=2.0, size=(args.batch, 70))
    heights = rng.integers(0, cfg.N + 1, size=(args.batch, 70))

    impls = [("python", _kernels_py)] + ([("cython", _kernels_c)] if _kernels_c is not None else [])
    if _kernels_c is None:
        print("compiled extension not built; timing the numpy backend only")
    results = {}
    for label, impl in impls:
        use(impl)
        t_oc = best(lambda: impl.open_close_heights(heights, cfg.N, se.length), args.repeat)
        t_det = best(lambda: detect_morph_many(r, cfg, se), args.repeat)
        results[label] = (t_oc, t_det)
        print(
            f"{label:>7}: open_close_heights {1e6 * t_oc / args.batch:8.2f} us/symbol   "
            f"detect_morph_many {1e6 * t_det / args.batch:8.2f} us/symbol"
        )
    if len(results) == 2:
        (po, pd), (co, cd) = results["python"], results["cython"]
        print(f"speedup: open_close_heights x{po / co:.1f}   detect_morph_many x{pd / cd:.1f}")
    use(_kernels_c or _kernels_py)


if __name__ == "__main__":
    main()
