"""Symmetric QSP unitaries and the scalar function g(x, phi)."""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels


class DomainError(ValueError):
    """Raised for arguments outside an operation's mathematical domain."""


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown parity {value!r}; expected 'even' or 'odd'") from None

    def degree(self, length):
        """Full polynomial degree carried by ``length`` reduced entries."""
        return 2 * length - 2 if self is Parity.EVEN else 2 * length - 1


def effective_length(values):
    """One plus the index of the last nonzero entry (0 for an all-zero vector)."""
    nz = np.flatnonzero(np.asarray(values))
    return int(nz[-1]) + 1 if nz.size else 0


@dataclass(frozen=True)
class ReducedPhaseFactors:
    """Independent half of a symmetric phase-factor sequence.

    ``values[0]`` is the centre angle (halved in the even case) and the
    sequence runs outward. The array length is the working length; trailing
    zeros are allowed and do not change g.
    """

    values: np.ndarray
    parity: Parity

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64).reshape(-1)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "parity", Parity.parse(self.parity))

    def __len__(self):
        return self.values.shape[0]

    @property
    def effective_length(self):
        return effective_length(self.values)

    @property
    def degree(self):
        return self.parity.degree(len(self))

    def one_norm(self):
        return float(np.sum(np.abs(self.values)))

    def padded(self, length):
        if length < len(self):
            raise ValueError("cannot pad to a shorter length")
        vals = np.zeros(length)
        vals[: len(self)] = self.values
        return ReducedPhaseFactors(vals, self.parity)


def _as_reduced(phi, parity=None):
    if isinstance(phi, ReducedPhaseFactors):
        return phi
    if parity is None:
        raise TypeError("parity is required when passing a bare array")
    return ReducedPhaseFactors(phi, parity)


def expand_symmetric(phi, parity=None):
    """Full symmetric phase factors for reduced ``phi``.

    Even: (p_{n-1}, ..., p_1, 2 p_0, p_1, ..., p_{n-1}).
    Odd:  (p_{n-1}, ..., p_0, p_0, ..., p_{n-1}).
    """
    phi = _as_reduced(phi, parity)
    v = phi.values
    if v.size == 0:
        if phi.parity is Parity.ODD:
            raise DomainError("odd reduced phase factors of length 0 have no degrees of freedom")
        return np.zeros(1)
    if phi.parity is Parity.EVEN:
        centre = np.array([2.0 * v[0]])
        return np.concatenate([v[:0:-1], centre, v[1:]])
    return np.concatenate([v[::-1], v])


def sqrt_one_minus_square(x):
    """sqrt(1 - x^2), switching to sin(arccos x) near |x| = 1."""
    x = np.asarray(x, dtype=np.float64)
    edge = np.sin(np.arccos(np.clip(x, -1.0, 1.0)))
    inner = np.sqrt(np.maximum(1.0 - x * x, 0.0))
    return np.where(np.abs(x) > 0.99, edge, inner)


def _check_domain(x):
    x = np.asarray(x, dtype=np.float64)
    if np.any(~np.isfinite(x)) or np.any(np.abs(x) > 1.0):
        raise DomainError("x must lie in [-1, 1]")
    return x


def signal_operator(x):
    """W(x) = [[x, i s], [i s, x]] with s = sqrt(1 - x^2)."""
    x = float(_check_domain(x))
    s = float(sqrt_one_minus_square(x))
    return np.array([[x, 1j * s], [1j * s, x]], dtype=np.complex128)


def qsp_unitary(x, psi):
    """U(x, psi) = e^{i psi_0 Z} prod_{j>=1} [W(x) e^{i psi_j Z}] as a 2x2 array.

    The product is accumulated strictly left to right.
    """
    psi = np.asarray(psi, dtype=np.float64).reshape(-1)
    if psi.size == 0:
        raise ValueError("need at least one phase factor")
    w = signal_operator(x)
    u = np.diag([np.exp(1j * psi[0]), np.exp(-1j * psi[0])])
    for p in psi[1:]:
        u = u @ w
        u = u @ np.diag([np.exp(1j * p), np.exp(-1j * p)])
    return u


def g_full(x, psi):
    """Im <0|U(x, psi)|0> for scalar or array ``x``."""
    psi = np.asarray(psi, dtype=np.float64).reshape(-1)
    if psi.size == 0:
        raise ValueError("need at least one phase factor")
    xa = _check_domain(x)
    flat = np.atleast_1d(xa).ravel()
    vals = _kernels.g_chain(psi, flat, sqrt_one_minus_square(flat))
    return float(vals[0]) if xa.ndim == 0 else vals.reshape(xa.shape)


def g(x, phi, parity=None):
    """g(x, phi) for reduced phase factors; invariant under zero padding."""
    phi = _as_reduced(phi, parity)
    if len(phi) == 0:
        xa = _check_domain(x)
        return 0.0 if xa.ndim == 0 else np.zeros(xa.shape)
    return g_full(x, expand_symmetric(phi))
