"""Hot loop: QSP top-row propagation over a batch of sample points.

The top row (r0, r1) of e^{i p_0 Z} prod_{j>=1} [W(x) e^{i p_j Z}] is carried
left to right in index order, one phase at a time, for every point at once.
Complex numbers are split into real and imaginary parts; both backends
run the same update formulas and agree to rounding (libm cos/sin may differ
in the last ulp).

``g_chain_numba`` is a ``numba.njit`` loop; ``g_chain_numpy`` vectorizes over
points with a Python loop over phases. ``g_chain`` is bound at import time;
set ``SYMQSP_DISABLE_NUMBA=1`` to force the numpy path.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

ENV_FLAG = "SYMQSP_DISABLE_NUMBA"

USE_NUMBA = HAVE_NUMBA and os.environ.get(ENV_FLAG, "0").lower() not in ("1", "true", "yes")


def g_chain_numpy(phases, x, s):
    """Im <0|U|0> at each point; ``s`` must equal sqrt(1 - x^2) >= 0."""
    n = x.shape[0]
    a = np.full(n, np.cos(phases[0]))
    b = np.full(n, np.sin(phases[0]))
    c = np.zeros(n)
    d = np.zeros(n)
    for p in phases[1:]:
        ec = np.cos(p)
        es = np.sin(p)
        t0r = a * x - d * s
        t0i = b * x + c * s
        t1r = c * x - b * s
        t1i = d * x + a * s
        a = t0r * ec - t0i * es
        b = t0r * es + t0i * ec
        c = t1r * ec + t1i * es
        d = t1i * ec - t1r * es
    return b


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def g_chain_numba(phases, x, s):
        n = x.shape[0]
        a = np.empty(n)
        b = np.empty(n)
        c = np.zeros(n)
        d = np.zeros(n)
        ec0 = np.cos(phases[0])
        es0 = np.sin(phases[0])
        for i in range(n):
            a[i] = ec0
            b[i] = es0
        for j in range(1, phases.shape[0]):
            ec = np.cos(phases[j])
            es = np.sin(phases[j])
            for i in range(n):
                xi = x[i]
                si = s[i]
                ai = a[i]
                bi = b[i]
                ci = c[i]
                di = d[i]
                t0r = ai * xi - di * si
                t0i = bi * xi + ci * si
                t1r = ci * xi - bi * si
                t1i = di * xi + ai * si
                a[i] = t0r * ec - t0i * es
                b[i] = t0r * es + t0i * ec
                c[i] = t1r * ec + t1i * es
                d[i] = t1i * ec - t1r * es
        return b

else:  # pragma: no cover
    g_chain_numba = None


def g_chain(phases, x, s):
    phases = np.ascontiguousarray(phases, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    s = np.ascontiguousarray(s, dtype=np.float64)
    if USE_NUMBA:
        return g_chain_numba(phases, x, s)
    return g_chain_numpy(phases, x, s)


def backend():
    return "numba" if USE_NUMBA else "numpy"
