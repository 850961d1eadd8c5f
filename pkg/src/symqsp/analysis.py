"""Tail-decay profiles and pointwise checks of solved phase factors."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .chebyshev import ChebyshevCoefficients, coeffs_of_samples, sample_function
from .kernel import Parity, g
from .solver import R_C, H_inverse, h


def tail_sums(values):
    """t[n] = sum_{k>n} |v_k| for n = 0..len-1, accumulated from the end.

    Adding non-negative terms back to front keeps the sequence
    non-increasing in floating point, and the last entry is exactly 0.
    """
    mags = np.abs(np.asarray(values, dtype=np.float64))
    out = np.zeros(mags.size)
    acc = 0.0
    for n in range(mags.size - 2, -1, -1):
        acc += mags[n + 1]
        out[n] = acc
    return out


def fit_window(length, skip=10):
    """Indices of the middle two quartiles, minus ``skip`` entries at each end."""
    lo = max(skip, length // 4)
    hi = min(length - 1 - skip, (3 * length) // 4)
    return np.arange(lo, hi + 1) if hi >= lo else np.arange(0)


def loglog_slope(values, window):
    """Least-squares slope of log|v_n| against log n over ``window``.

    Zero entries and n = 0 are dropped; returns nan when fewer than two
    points remain.
    """
    values = np.abs(np.asarray(values, dtype=np.float64))
    idx = np.asarray(window)
    idx = idx[(idx > 0) & (values[idx] > 0)] if idx.size else idx
    if idx.size < 2:
        return float("nan")
    slope, _ = np.polyfit(np.log(idx), np.log(values[idx]), 1)
    return float(slope)


@dataclass(frozen=True)
class DecayProfile:
    """Tail sums of c and phi with fitted algebraic rates.

    ``fitted_rate_*`` is the log-log slope of the entry magnitudes |c_k| and
    |phi_k|; ``tail_rate_*`` is the slope of the tail sums themselves, which
    for k^{-p} decay is about 1 - p and is bent by truncation near the end.
    """

    tail_sums_c: np.ndarray
    tail_sums_phi: np.ndarray
    fitted_rate_c: float
    fitted_rate_phi: float
    tail_rate_c: float
    tail_rate_phi: float
    c_one_norm: float
    decay_constant: Optional[float]

    def bound_rhs(self):
        if self.decay_constant is None:
            return None
        return self.decay_constant * self.tail_sums_c


def decay_constant(c_norm):
    """1 / (2 - h(H^{-1}(||c||_1))) when ||c||_1 < r_c, else None."""
    if c_norm >= R_C:
        return None
    return 1.0 / (2.0 - h(H_inverse(c_norm)))


def decay_profile(c, phi):
    c_vals = np.asarray(c.coeffs, dtype=np.float64)
    phi_vals = np.asarray(phi.values, dtype=np.float64)
    if c_vals.shape != phi_vals.shape:
        raise ValueError(
            f"coefficient and phase-factor lengths differ ({c_vals.size} vs {phi_vals.size})"
        )
    window = fit_window(c_vals.size)
    tc = tail_sums(c_vals)
    tp = tail_sums(phi_vals)
    c_norm = c.one_norm()
    return DecayProfile(
        tail_sums_c=tc,
        tail_sums_phi=tp,
        fitted_rate_c=loglog_slope(c_vals, window),
        fitted_rate_phi=loglog_slope(phi_vals, window),
        tail_rate_c=loglog_slope(tc, window),
        tail_rate_phi=loglog_slope(tp, window),
        c_one_norm=c_norm,
        decay_constant=decay_constant(c_norm),
    )


class BoundNotApplicable(ValueError):
    pass


def check_decay_bound(profile, atol=1e-10):
    """True iff every tail of phi is within C times the matching tail of c."""
    if profile.decay_constant is None:
        raise BoundNotApplicable(
            f"bound not applicable: ||c||_1 = {profile.c_one_norm:.6g} >= r_c"
        )
    rhs = profile.decay_constant * profile.tail_sums_c + atol
    return bool(np.all(profile.tail_sums_phi <= rhs))


def check_points(length):
    """x_j = cos((2j - 1) pi / (4 n)), j = 1..n: positive roots of T_{2n}."""
    j = np.arange(1, length + 1)
    return np.cos((2 * j - 1) * np.pi / (4 * length))


def max_pointwise_error(phi, c):
    """max_j |g(x_j, phi) - f(x_j)| over :func:`check_points`, with f the
    Chebyshev series of ``c`` summed by Clenshaw's recurrence."""
    if phi.parity is not c.parity:
        raise ValueError("phase factors and coefficients have different parities")
    n = max(len(phi), len(c))
    if n == 0:
        return 0.0
    x = check_points(n)
    return float(np.max(np.abs(g(x, phi) - c(x))))


def abs_x_cubed_target(scale=0.8, truncation=1000, oversample=16):
    """Even Chebyshev coefficients of scale * |x|^3 for T_0, T_2, ..., T_{2 truncation}.

    Computed from samples on a node grid of degree 2 * truncation * oversample,
    far above the kept degree so aliasing is negligible.
    """
    grid_degree = max(2 * truncation * oversample, 2 * truncation)
    samples = sample_function(lambda x: scale * np.abs(x) ** 3, grid_degree)
    full = coeffs_of_samples(samples, Parity.EVEN)
    return ChebyshevCoefficients(full.coeffs[: truncation + 1], Parity.EVEN)
