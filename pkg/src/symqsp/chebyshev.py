"""Chebyshev coefficients from node samples, the forward map F, and targets.

F(phi) samples g(., phi) on x_j = cos(2 pi j / (2d + 1)), j = 0..2d, and
reads the Chebyshev coefficients off the real part of one length-(2d + 1)
DFT. With that many nodes the discrete orthogonality of T_0..T_d is exact,
so F is exact up to rounding for the degree-d polynomial g.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as npcheb

from . import _kernels
from .kernel import Parity, _as_reduced, effective_length, expand_symmetric


@dataclass(frozen=True)
class ChebyshevCoefficients:
    """Coefficients c_j of T_{2j} (even) or T_{2j+1} (odd)."""

    coeffs: np.ndarray
    parity: Parity

    def __post_init__(self):
        vals = np.array(self.coeffs, dtype=np.float64).reshape(-1)
        vals.setflags(write=False)
        object.__setattr__(self, "coeffs", vals)
        object.__setattr__(self, "parity", Parity.parse(self.parity))

    def __len__(self):
        return self.coeffs.shape[0]

    @property
    def effective_length(self):
        return effective_length(self.coeffs)

    @property
    def degree(self):
        return self.parity.degree(len(self))

    def one_norm(self):
        total = 0.0
        for v in self.coeffs:
            total += abs(v)
        return total

    def padded(self, length):
        if length < len(self):
            raise ValueError("cannot pad to a shorter length")
        vals = np.zeros(length)
        vals[: len(self)] = self.coeffs
        return ChebyshevCoefficients(vals, self.parity)

    def dense(self):
        """Coefficients in the plain T_0, T_1, ... basis."""
        out = np.zeros(max(self.degree + 1, 1))
        start = 0 if self.parity is Parity.EVEN else 1
        out[start::2][: len(self)] = self.coeffs
        return out

    def __call__(self, x):
        """Evaluate the series at ``x`` (Clenshaw recurrence)."""
        return npcheb.chebval(x, self.dense())


@dataclass(frozen=True)
class NodeGrid:
    d: int
    nodes: np.ndarray


def _half_angles(d):
    return 2.0 * np.pi * np.arange(d + 1) / (2 * d + 1)


def node_grid(d):
    """x_j = cos(2 pi j / (2d + 1)) for j = 0..2d, exactly mirror-symmetric."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    half = np.cos(_half_angles(d))
    return NodeGrid(d, np.concatenate([half, half[:0:-1]]))


def dft_real(values):
    """v_l = sum_j values_j exp(-2 pi i l j / n) for arbitrary n.

    Delegates to numpy's pocketfft, which is O(n log n) for every n
    (Bluestein for large prime factors).
    """
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    if values.size == 0:
        raise ValueError("DFT of an empty vector")
    return np.fft.fft(values)


def dft_direct(values):
    """O(n^2) reference DFT with exact integer phase reduction."""
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    n = values.size
    if n == 0:
        raise ValueError("DFT of an empty vector")
    j = np.arange(n)
    out = np.empty(n, dtype=np.complex128)
    for l in range(n):
        ang = -2.0 * np.pi * ((l * j) % n) / n
        out[l] = np.sum(values * np.cos(ang)) + 1j * np.sum(values * np.sin(ang))
    return out


def chebyshev_from_samples(samples):
    """All coefficients of T_0..T_d from samples on ``node_grid(d)``."""
    samples = np.asarray(samples, dtype=np.float64).reshape(-1)
    n = samples.size
    if n % 2 == 0:
        raise ValueError(f"expected 2d+1 samples, got an even count ({n})")
    d = (n - 1) // 2
    v = dft_real(samples).real[: d + 1]
    a = (2.0 / n) * v
    a[0] *= 0.5
    return a


def coeffs_of_samples(samples, parity):
    """Parity-restricted Chebyshev coefficients from samples on ``node_grid(d)``."""
    parity = Parity.parse(parity)
    a = chebyshev_from_samples(samples)
    return ChebyshevCoefficients(a[0::2] if parity is Parity.EVEN else a[1::2], parity)


def sample_function(f, d):
    """Samples of a vectorized callable ``f`` on ``node_grid(d)``."""
    x = np.cos(_half_angles(d))
    half = np.asarray(f(x), dtype=np.float64)
    return np.concatenate([half, half[:0:-1]])


def _g_samples(psi):
    d = psi.shape[0] - 1
    theta = _half_angles(d)
    # s_j = sin(theta_j) >= 0 on the half grid; avoids forming 1 - x^2
    half = _kernels.g_chain(psi, np.cos(theta), np.sin(theta))
    return np.concatenate([half, half[:0:-1]])


def full_coefficients(psi):
    """Chebyshev coefficients of g(., psi) for arbitrary (not necessarily
    symmetric) full phase factors; the parity is that of len(psi) - 1."""
    psi = np.asarray(psi, dtype=np.float64).reshape(-1)
    if psi.size == 0:
        raise ValueError("need at least one phase factor")
    parity = Parity.EVEN if (psi.size - 1) % 2 == 0 else Parity.ODD
    return coeffs_of_samples(_g_samples(psi), parity)


def forward_map(phi, parity=None):
    """F(phi): Chebyshev coefficients of g(., phi), same length as ``phi``."""
    phi = _as_reduced(phi, parity)
    n = len(phi)
    if n == 0:
        return ChebyshevCoefficients(np.zeros(0), phi.parity)
    out = coeffs_of_samples(_g_samples(expand_symmetric(phi)), phi.parity)
    assert len(out) == n
    return out


# --- Bessel functions and the Jacobi-Anger expansion -----------------------

_RESCALE = 1e250


def _miller_start(kmax, tau):
    top = max(kmax, math.ceil(1.4 * tau))
    start = max(math.ceil(1.4 * tau) + 60, top + 40 + math.ceil(math.sqrt(40.0 * max(top, 1))))
    return start + (start % 2)


def bessel_j_sequence(kmax, tau):
    """J_0(tau), ..., J_kmax(tau) for tau >= 0 by Miller's backward recurrence.

    The recurrence J_{k-1} = (2k / tau) J_k - J_{k+1} is run downward from an
    even start index far above both kmax and tau, then normalized with
    J_0 + 2 sum_{k>=1} J_{2k} = 1.
    """
    kmax = int(kmax)
    if kmax < 0:
        raise ValueError("order must be non-negative")
    tau = float(tau)
    if tau < 0 or not math.isfinite(tau):
        raise ValueError("tau must be finite and non-negative")
    out = np.zeros(kmax + 1)
    if tau == 0.0:
        out[0] = 1.0
        return out
    if tau < 1e-8:
        # two-term power series; next term is O(tau^4) relative
        half = 0.5 * tau
        term = 1.0
        for k in range(kmax + 1):
            if k:
                term *= half / k
            if term == 0.0:
                break
            out[k] = term * (1.0 - half * half / (k + 1))
        return out

    start = _miller_start(kmax, tau)
    vals = np.zeros(start + 2)
    vals[start] = 1e-300
    norm = 0.0
    for k in range(start, 0, -1):
        vals[k - 1] = (2.0 * k / tau) * vals[k] - vals[k + 1]
        if abs(vals[k - 1]) > _RESCALE:
            vals[k - 1 :] /= _RESCALE
            norm /= _RESCALE
        if k % 2 == 0:
            norm += 2.0 * vals[k]
    norm += vals[0]
    return vals[: kmax + 1] / norm


def bessel_j(k, tau):
    """Bessel function of the first kind J_k(tau), integer k >= 0, tau >= 0."""
    return float(bessel_j_sequence(k, tau)[k])


def jacobi_anger_degree(tau, eps0):
    return math.ceil(1.4 * abs(tau) + math.log(1.0 / eps0))


def jacobi_anger(tau, eps0=1e-14, scale=0.5):
    """Scaled even and odd parts of exp(-i tau x) truncated to T_k, k < d.

    Returns ``(c_even, c_odd, d)`` with d = ceil(1.4 |tau| + ln(1/eps0)),
    c_even = scale * (J_0, -2 J_2, 2 J_4, ...) and
    c_odd = scale * (2 J_1, -2 J_3, 2 J_5, ...).
    """
    if not 0.0 < eps0 < 1.0:
        raise ValueError("eps0 must lie in (0, 1)")
    if not 0.0 < scale <= 1.0:
        raise ValueError("scale must lie in (0, 1]")
    d = jacobi_anger_degree(tau, eps0)
    jk = bessel_j_sequence(max(d - 1, 1), abs(tau))
    if tau < 0:
        jk[1::2] *= -1.0  # J_k(-t) = (-1)^k J_k(t)
    k_even = np.arange(0, d, 2)
    k_odd = np.arange(1, d, 2)
    even = 2.0 * (-1.0) ** (k_even // 2) * jk[k_even]
    even[0] = jk[0]
    odd = 2.0 * (-1.0) ** ((k_odd - 1) // 2) * jk[k_odd]
    return (
        ChebyshevCoefficients(scale * even, Parity.EVEN),
        ChebyshevCoefficients(scale * odd, Parity.ODD),
        d,
    )
