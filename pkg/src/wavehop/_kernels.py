"""Hot inner loops, with a numba-compiled path and a pure-numpy fallback.

The numba path is used when numba imports cleanly and the environment
variable ``WAVEHOP_DISABLE_NUMBA`` is unset (or "0", or empty).  Both
variants are always importable so they can be cross-checked and timed
against each other (see benchmarks/compare_kernels.py).

``DIRECT_TO_FFT_COST_RATIO`` feeds the per-row routing decision in the
strided transform: one M*log2(M) unit of FFT work buys roughly that many
multiply-accumulates of a direct kernel.  Measured at 10-12 on commodity
x86 for every kernel variant here; 8 leans slightly toward the dense
path and only steers a speed decision, never a result.
"""

import os

import numpy as np

__all__ = [
    "NUMBA_ENABLED",
    "DIRECT_TO_FFT_COST_RATIO",
    "strided_correlate",
    "strided_correlate_numpy",
    "strided_correlate_symmetric",
]


def strided_correlate_numpy(xpad, taps_re, taps_im, hop, frames):
    """Correlate ``xpad`` with the taps at translations 0, hop, 2*hop, ...

    ``xpad`` must already be offset so that frame k covers
    ``xpad[k*hop : k*hop + len(taps)]``.  Returns (real, imag) parts.

    Splitting tap index j into q*hop + p turns the strided correlation
    into one contiguous matmul, (frames+blocks-1, hop) x (hop, 2*blocks),
    plus a short diagonal reduction over q -- no windowed copies.  For
    hop <= 2 the block split saves nothing (the intermediate grows to
    ~2/hop times a plain window copy), so dense windows win there.
    """
    width = taps_re.shape[0]
    if hop <= 2:
        stride = xpad.strides[0]
        windows = np.lib.stride_tricks.as_strided(
            xpad, shape=(frames, width), strides=(stride * hop, stride), writeable=False
        )
        return windows @ taps_re, windows @ taps_im
    blocks = -(-width // hop)
    needed = (frames + blocks - 1) * hop
    if xpad.size < needed:
        xpad = np.concatenate([xpad, np.zeros(needed - xpad.size)])
    x2d = xpad[:needed].reshape(frames + blocks - 1, hop)
    taps2d = np.zeros((2, blocks * hop))
    taps2d[0, :width] = taps_re
    taps2d[1, :width] = taps_im
    # products[i, c, q] = x2d[i] . taps2d[c, q*hop:(q+1)*hop]
    products = np.tensordot(x2d, taps2d.reshape(2, blocks, hop), axes=([1], [2]))
    out_re = np.zeros(frames)
    out_im = np.zeros(frames)
    for q in range(blocks):
        out_re += products[q: q + frames, 0, q]
        out_im += products[q: q + frames, 1, q]
    return out_re, out_im


_flag = os.environ.get("WAVEHOP_DISABLE_NUMBA", "")
_want_numba = _flag in ("", "0")

if _want_numba:
    try:
        from numba import njit
    except ImportError:
        _want_numba = False

if _want_numba:

    @njit(cache=True, nogil=True, fastmath=True)
    def strided_correlate_numba(xpad, taps_re, taps_im, hop, frames):
        width = taps_re.shape[0]
        out_re = np.empty(frames)
        out_im = np.empty(frames)
        for k in range(frames):
            start = k * hop
            acc_re = 0.0
            acc_im = 0.0
            for j in range(width):
                v = xpad[start + j]
                acc_re += v * taps_re[j]
                acc_im += v * taps_im[j]
            out_re[k] = acc_re
            out_im[k] = acc_im
        return out_re, out_im

    @njit(cache=True, nogil=True, fastmath=True)
    def strided_correlate_symmetric(xpad, re_half, im_half, hop, frames):
        # For taps with even real and odd imaginary part about the
        # center: *_half holds taps[L:], center value first.  Folding the
        # window halves the tap loads relative to the generic kernel.
        half = re_half.shape[0] - 1
        out_re = np.empty(frames)
        out_im = np.empty(frames)
        for k in range(frames):
            center = k * hop + half
            acc_re = xpad[center] * re_half[0]
            acc_im = 0.0
            for j in range(1, half + 1):
                right = xpad[center + j]
                left = xpad[center - j]
                acc_re += (right + left) * re_half[j]
                acc_im += (right - left) * im_half[j]
            out_re[k] = acc_re
            out_im[k] = acc_im
        return out_re, out_im

    strided_correlate = strided_correlate_numba
    NUMBA_ENABLED = True
else:
    strided_correlate_symmetric = None
    strided_correlate = strided_correlate_numpy
    NUMBA_ENABLED = False

DIRECT_TO_FFT_COST_RATIO = 8.0
