"""Backend selection for the superposition kernels.

The compiled extension is used when it imports; setting ``GALE_PURE_PYTHON=1``
forces the numpy fallback.  ``BACKEND`` names the active one.
"""

import os

import numpy as np

from gale import _pykernels

try:
    from gale import _ckernels  # noqa: F401
    HAVE_CYTHON = True
except ImportError:
    HAVE_CYTHON = False

if os.environ.get("GALE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    _impl = _ckernels if HAVE_CYTHON else _pykernels
    BACKEND = "cython" if HAVE_CYTHON else "python"


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def field_sum(amp, k, cos_t, sin_t, omega, phase, xw, yw, t, backend=None):
    """Evaluate sum_ij amp[i,j] cos(k_i xw cos_j + k_i yw sin_j - w_i t + phase[i,j]).

    ``xw`` and ``yw`` are wind-frame coordinates of the query points; returns
    one value per point.
    """
    impl = _select(backend)
    return impl.field_sum(_f64(amp), _f64(k), _f64(cos_t), _f64(sin_t), _f64(omega),
                          _f64(phase), _f64(np.atleast_1d(xw)), _f64(np.atleast_1d(yw)),
                          float(t))


def series_sum(amp, omega, phase, t, backend=None):
    """Evaluate sum_i amp[i] cos(w_i t + phase[i]) at every time in ``t``."""
    impl = _select(backend)
    return impl.series_sum(_f64(amp), _f64(omega), _f64(phase), _f64(np.atleast_1d(t)))


def _select(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _pykernels
    if backend == "cython":
        if not HAVE_CYTHON:
            raise ImportError("the compiled kernel extension is not built")
        return _ckernels
    raise ValueError(f"unknown kernel backend {backend!r}")
