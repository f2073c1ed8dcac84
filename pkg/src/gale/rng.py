"""Counter-based uniform variates.

Every variate is a pure function of ``(seed, stream, *counters)``, so the
value assigned to, say, phase ``(i, j)`` of component 2 never depends on how
many other variates were drawn before it.  The mixing function is the
SplitMix64 finalizer applied to a chained key.
"""

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)

# stream ids for everything in gale that consumes randomness
STREAM_LON = 0
STREAM_LAT = 1
STREAM_VERT = 2
STREAM_ROLL = 3
STREAM_GUST = 16
STREAM_SERIES = 32


def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def hash64(seed, stream, *counters):
    """Chained SplitMix64 hash of a seed, a stream id and integer counters.

    Counters may be integers or integer arrays; they broadcast together.
    Returns a ``uint64`` array.
    """
    with np.errstate(over="ignore"):
        h = _mix(np.atleast_1d(np.uint64(int(seed) & _MASK)) + _GOLDEN)
        h = _mix(h ^ (np.uint64(int(stream) & _MASK) * _GOLDEN))
        for c in counters:
            c = np.asarray(c).astype(np.uint64)
            h = _mix(h + (c + np.uint64(1)) * _GOLDEN)
    return h


def uniform(seed, stream, *counters):
    """Uniform variates in ``[0, 1)`` with 53 bits of resolution."""
    h = hash64(seed, stream, *counters)
    return (h >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def phases(seed, stream, n, m=None):
    """Phase angles in ``[0, 2*pi)`` keyed by ``(seed, stream, i[, j])``."""
    i = np.arange(n)
    if m is None:
        return 2.0 * np.pi * uniform(seed, stream, i)
    j = np.arange(m)
    return 2.0 * np.pi * uniform(seed, stream, i[:, None], j[None, :])
