"""Compare the compiled kernels with the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Prints per-kernel timings for both backends, then times one end-to-end
criterion evaluation in a subprocess per backend.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from univalence import _pykernels

try:
    from univalence import _ckernels
except ImportError:
    _ckernels = None

END_TO_END = (
    "import time;"
    "from univalence.criteria import eval_corollary, GridConfig;"
    "from univalence.series import builtin, identity;"
    "k = builtin('koebe', radius=0.999);"
    "t = time.perf_counter();"
    "eval_corollary('C1', k, identity(), grid=GridConfig());"
    "print(time.perf_counter() - t)"
)


def cases(rng):
    c64 = rng.normal(size=65) + 1j * rng.normal(size=65)
    c4k = rng.normal(size=4097) + 1j * rng.normal(size=4097)
    z_small = 0.9 * np.exp(2j * np.pi * rng.random(81))
    z_grid = 0.9 * np.exp(2j * np.pi * rng.random(8193))
    u = np.concatenate([[1], 0.1 * c64[1:]])
    v = np.concatenate([[0], 0.1 * c64[1:]])
    return [
        ("horner_jet  N=64   81 pts  nd=2", "horner_jet", (c64, z_small, 2)),
        ("horner_jet  N=64 8193 pts  nd=2", "horner_jet", (c64, z_grid, 2)),
        ("horner_jet  N=4k 8193 pts  nd=1", "horner_jet", (c4k, z_grid, 1)),
        ("cauchy      N=64", "cauchy", (c64, c64, 64)),
        ("series_log  N=64", "series_log", (u,)),
        ("series_exp  N=64", "series_exp", (v,)),
    ]


def bench(mod, name, args, repeat):
    fn = getattr(mod, name)
    number = max(1, int(0.2 / max(timeit.timeit(lambda: fn(*args), number=1), 1e-7)))
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["UNIVALENCE_PURE_PYTHON"] = "1"
    else:
        env.pop("UNIVALENCE_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    a = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; only the fallback can be timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':36s} {'numpy [us]':>12s} {'cython [us]':>12s} {'speedup':>8s}")
    for label, name, args in cases(rng):
        tp = bench(_pykernels, name, args, a.repeat) * 1e6
        if _ckernels is not None:
            tc = bench(_ckernels, name, args, a.repeat) * 1e6
            print(f"{label:36s} {tp:12.1f} {tc:12.1f} {tp / tc:8.1f}")
        else:
            print(f"{label:36s} {tp:12.1f} {'-':>12s} {'-':>8s}")
    if not a.skip_end_to_end:
        print("\nBecker criterion on the Koebe function (54k-term series, 8193-point grid plus zoom):")
        tp = end_to_end(pure=True)
        print(f"  numpy fallback : {tp:7.2f} s")
        if _ckernels is not None:
            tc = end_to_end(pure=False)
            print(f"  compiled       : {tc:7.2f} s   speedup {tp / tc:.1f}x")


if __name__ == "__main__":
    main()
