"""Fixed-point iteration for reduced phase factors and its constants.

The update is phi <- phi - (F(phi) - c) / 2 starting from phi = 0, where
DF(0) = 2 I makes this a Newton step frozen at the origin. Convergence is
certified for ||c||_1 <= H(r_phi_tilde) ~ 0.861 with Q-linear rate at most
gamma_tilde ~ 0.8189; in practice it converges far outside that ball.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .chebyshev import ChebyshevCoefficients, forward_map, full_coefficients
from .kernel import DomainError, Parity, ReducedPhaseFactors


# --- bound functions and constants -----------------------------------------


def h(x):
    """Bound on ||DF(phi) - 2I||_1 as a function of ||phi||_1."""
    return 4.0 * np.sinh(x) ** 2  # = 2 cosh(2x) - 2 without cancellation


def H(x):
    """H(x) = int_0^x (2 - h(t)) dt = 4x - sinh(2x)."""
    return 4.0 * x - np.sinh(2.0 * x)


def C1(delta):
    return 2.0 * np.cosh(2.0 * delta)


def C2(delta):
    return 4.0 * np.sinh(2.0 * delta)


R_PHI = 0.5 * math.acosh(2.0)
R_C = float(H(R_PHI))
R_PHI_TILDE = 0.5 * math.asinh(math.acosh(2.0))
R_C_TILDE = float(H(R_PHI_TILDE))


def H_inverse(theta):
    """Inverse of H on [0, r_phi]; defined for 0 <= theta < r_c."""
    theta = float(theta)
    if not 0.0 <= theta < R_C:
        raise DomainError(f"H_inverse needs 0 <= theta < r_c = {R_C:.6f}, got {theta}")
    if theta == 0.0:
        return 0.0
    return brentq(lambda r: H(r) - theta, 0.0, R_PHI, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def C_tilde(theta):
    """Lower quasi-isometry constant 2 - h(H^{-1}(theta))."""
    return 2.0 - h(H_inverse(theta))


def gamma(r):
    """(1/2) int_0^1 h(r + s a) ds with a = sinh(2r)/2 - r, in closed form.

    Equals cosh(2r + a) sinh(a) / a - 1, rearranged to avoid cancellation.
    """
    r = float(r)
    a = 0.5 * math.sinh(2.0 * r) - r
    if a < 1e-3:
        q1 = a * a / 6.0 * (1.0 + a * a / 20.0 * (1.0 + a * a / 42.0))
    else:
        q1 = math.sinh(a) / a - 1.0
    return 2.0 * math.sinh(r + 0.5 * a) ** 2 * (1.0 + q1) + q1


@dataclass(frozen=True)
class Constants:
    r_phi: float
    r_c: float
    r_phi_tilde: float
    r_c_tilde: float
    gamma_tilde: float
    h: Callable = field(default=h, repr=False)
    H: Callable = field(default=H, repr=False)
    H_inverse: Callable = field(default=H_inverse, repr=False)
    C1: Callable = field(default=C1, repr=False)
    C2: Callable = field(default=C2, repr=False)
    C_tilde: Callable = field(default=C_tilde, repr=False)
    gamma: Callable = field(default=gamma, repr=False)

    def as_dict(self):
        return {
            "r_phi": self.r_phi,
            "r_c": self.r_c,
            "r_phi_tilde": self.r_phi_tilde,
            "r_c_tilde": self.r_c_tilde,
            "gamma_tilde": self.gamma_tilde,
        }


@lru_cache(maxsize=1)
def constants():
    return Constants(R_PHI, R_C, R_PHI_TILDE, R_C_TILDE, gamma(R_PHI_TILDE))


# --- solver ------------------------------------------------------------------


class Guarantee(Enum):
    CERTIFIED = "certified"
    UNCERTIFIED = "uncertified"


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-12
    max_iter: int = 100
    divergence_factor: float = 10.0

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if int(self.max_iter) < 1:
            raise ValueError("max_iter must be a positive integer")
        if not self.divergence_factor > 1:
            raise ValueError("divergence_factor must exceed 1")


@dataclass(frozen=True)
class SolverReport:
    phi: ReducedPhaseFactors
    residual_history: np.ndarray
    iterations: int
    converged: bool
    guarantee: Guarantee
    apriori_phi_bound: Optional[float]

    @property
    def residual(self):
        return float(self.residual_history[-1])


class DivergenceError(RuntimeError):
    """The residual left the divergence envelope; ``report`` holds the state
    at the offending iteration."""

    def __init__(self, iteration, residual, limit, report):
        super().__init__(
            f"fixed-point iteration diverged at iteration {iteration}: "
            f"residual {residual:.6g} exceeds {limit:.6g}"
        )
        self.iteration = iteration
        self.residual = residual
        self.limit = limit
        self.report = report


def _one_norm(v):
    return float(np.sum(np.abs(v)))


def fpi_solve(c, config=None, *, callback=None):
    """Solve F(phi) = c by phi_{t+1} = phi_t - (F(phi_t) - c) / 2 from phi_0 = 0.

    ``c`` is a :class:`ChebyshevCoefficients`; the iterate has the same
    length. ``callback(t, phi_t)`` is called once per evaluated iterate,
    including t = 0. Stops when ||F(phi_t) - c||_1 <= tol; returns an
    unconverged report after ``max_iter`` updates; raises
    :class:`DivergenceError` when the residual exceeds
    ``divergence_factor * max(||c||_1, tol)``.
    """
    config = config or SolverConfig()
    target = np.asarray(c.coeffs, dtype=np.float64)
    parity = c.parity
    c_norm = c.one_norm()
    guarantee = Guarantee.CERTIFIED if c_norm <= R_C_TILDE else Guarantee.UNCERTIFIED
    bound = H_inverse(c_norm) if c_norm < R_C else None
    limit = config.divergence_factor * max(c_norm, config.tol)

    phi = np.zeros(target.shape[0])
    history = []

    def report(t, converged):
        return SolverReport(
            ReducedPhaseFactors(phi, parity), np.array(history), t, converged, guarantee, bound
        )

    for t in range(int(config.max_iter) + 1):
        diff = forward_map(ReducedPhaseFactors(phi, parity)).coeffs - target
        res = _one_norm(diff)
        history.append(res)
        if callback is not None:
            callback(t, phi.copy())
        if res <= config.tol:
            return report(t, True)
        if not res <= limit:
            raise DivergenceError(t, res, limit, report(t, False))
        if t == config.max_iter:
            break
        phi = phi - 0.5 * diff
    return report(int(config.max_iter), False)


# --- derivatives ---------------------------------------------------------------


def jacobian_column(phi, k):
    """Exact k-th column of DF(phi) as F(phi + pi/4 e_k) - F(phi - pi/4 e_k).

    g depends on each phi_k through e^{+-2 i phi_k} only, so the quarter-period
    central difference is exact. Both evaluations use length max(len, k + 1).
    """
    k = int(k)
    if k < 0:
        raise IndexError("column index must be non-negative")
    base = phi.padded(max(len(phi), k + 1))
    plus = base.values.copy()
    minus = base.values.copy()
    plus[k] += 0.25 * np.pi
    minus[k] -= 0.25 * np.pi
    col = (
        forward_map(ReducedPhaseFactors(plus, phi.parity)).coeffs
        - forward_map(ReducedPhaseFactors(minus, phi.parity)).coeffs
    )
    return ChebyshevCoefficients(col, phi.parity)


def jacobian(phi, size=None):
    """Square DF(phi) restricted to the first ``size`` rows and columns."""
    size = len(phi) if size is None else int(size)
    base = phi.padded(max(len(phi), size))
    out = np.empty((size, size))
    for k in range(size):
        out[:, k] = jacobian_column(base, k).coeffs[:size]
    return out


def matrix_one_norm(a):
    """Induced l1 norm: the largest column absolute sum."""
    a = np.asarray(a)
    return float(np.max(np.sum(np.abs(a), axis=0))) if a.size else 0.0


def hessian_entry_norm(psi, r, s):
    """||Chebyshev coefficients of d^2 g / d psi_r d psi_s||_1 for full ``psi``.

    Uses d_r d_s U(psi) = U(psi + pi/2 e_r + pi/2 e_s) for r != s, and
    d_r^2 U = -U on the diagonal.
    """
    psi = np.array(psi, dtype=np.float64).reshape(-1)
    if not (0 <= r < psi.size and 0 <= s < psi.size):
        raise IndexError("phase index out of range")
    if r != s:
        psi[r] += 0.5 * np.pi
        psi[s] += 0.5 * np.pi
    return full_coefficients(psi).one_norm()


__all__ = [
    "C1",
    "C2",
    "C_tilde",
    "Constants",
    "DivergenceError",
    "Guarantee",
    "H",
    "H_inverse",
    "Parity",
    "SolverConfig",
    "SolverReport",
    "constants",
    "fpi_solve",
    "gamma",
    "h",
    "hessian_entry_norm",
    "jacobian",
    "jacobian_column",
    "matrix_one_norm",
]
