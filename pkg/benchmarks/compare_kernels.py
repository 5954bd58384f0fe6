#!/usr/bin/env python3
"""Time the numba strided kernels against the pure-numpy fallback.

The package selects its backend at import time (WAVEHOP_DISABLE_NUMBA=1
forces numpy); this script imports both variants directly and times them
on the same desk-scale workload, cross-checking their outputs first.

Usage: python benchmarks/compare_kernels.py [--length N] [--hop H] [--reps R]
"""

import argparse
import statistics
import time

import numpy as np

from wavehop import MorletParams, SynthSpec, make_scale_grid, synthesize
from wavehop import _kernels
from wavehop.wavelet import sample_wavelet


def time_rows(fn, rows, reps):
    fn(*rows[0])  # warm-up / JIT
    times = []
    for _ in range(reps):
        start = time.perf_counter()
        for args in rows:
            fn(*args)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--length", type=int, default=160_000)
    parser.add_argument("--hop", type=int, default=128)
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--scales", type=int, default=64)
    args = parser.parse_args()

    params = MorletParams()
    rate = 16_000.0
    signal = synthesize(SynthSpec("white_noise", args.length, rate, seed=0))
    grid = make_scale_grid(20.0, 0.45 * rate, args.scales, rate, params)
    taps_list = [sample_wavelet(params, s) for s in grid.scales]

    frames = -(-args.length // args.hop)
    max_half = max(t.size for t in taps_list) // 2
    xpad = np.zeros(max_half + args.length + max_half + args.hop)
    xpad[max_half:max_half + args.length] = signal.samples

    generic_rows = []
    folded_rows = []
    for taps in taps_list:
        half = taps.size // 2
        base = xpad[max_half - half:]
        taps_re = np.ascontiguousarray(taps.real)
        taps_im = np.ascontiguousarray(taps.imag)
        generic_rows.append((base, taps_re, taps_im, args.hop, frames))
        folded_rows.append((base, taps_re[half:], taps_im[half:], args.hop, frames))

    # cross-check the backends before timing them
    for g_args in generic_rows[:: max(1, len(generic_rows) // 8)]:
        fast = _kernels.strided_correlate_numpy(*g_args)
        if _kernels.NUMBA_ENABLED:
            jit = _kernels.strided_correlate_numba(*g_args)
            scale = max(np.abs(fast[0]).max(), 1e-30)
            assert np.allclose(jit[0], fast[0], rtol=0, atol=1e-10 * scale)
            assert np.allclose(jit[1], fast[1], rtol=0, atol=1e-10 * scale)
    print(f"length={args.length} hop={args.hop} scales={args.scales} "
          f"frames={frames} reps={args.reps}")

    t_numpy = time_rows(_kernels.strided_correlate_numpy, generic_rows, args.reps)
    print(f"numpy fallback (polyphase matmul):  {t_numpy * 1e3:8.1f} ms")

    if not _kernels.NUMBA_ENABLED:
        print("numba unavailable or disabled; nothing to compare")
        return

    t_numba = time_rows(_kernels.strided_correlate_numba, generic_rows, args.reps)
    print(f"numba generic kernel:               {t_numba * 1e3:8.1f} ms "
          f"({t_numpy / t_numba:.2f}x vs numpy)")

    t_folded = time_rows(_kernels.strided_correlate_symmetric, folded_rows, args.reps)
    print(f"numba symmetric kernel:             {t_folded * 1e3:8.1f} ms "
          f"({t_numpy / t_folded:.2f}x vs numpy)")


if __name__ == "__main__":
    main()
