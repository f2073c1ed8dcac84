"""Pure-numpy versions of the superposition kernels in ``_ckernels.pyx``.

Each query point is reduced on its own so a batch gives bit-identical
results to a loop of single queries.
"""

import numpy as np

_SERIES_CHUNK = 4096


def field_sum(amp, k, cos_t, sin_t, omega, phase, xw, yw, t):
    amp = np.asarray(amp, dtype=np.float64)
    out = np.empty(len(xw), dtype=np.float64)
    wt = (omega * t)[:, None]
    for p in range(len(xw)):
        kx = (k * xw[p])[:, None]
        ky = (k * yw[p])[:, None]
        arg = kx * cos_t[None, :] + ky * sin_t[None, :] - wt + phase
        out[p] = np.sum(amp * np.cos(arg))
    return out


def series_sum(amp, omega, phase, t):
    t = np.asarray(t, dtype=np.float64)
    out = np.empty(len(t), dtype=np.float64)
    for start in range(0, len(t), _SERIES_CHUNK):
        tc = t[start:start + _SERIES_CHUNK]
        out[start:start + len(tc)] = np.cos(np.outer(tc, omega) + phase) @ amp
    return out
