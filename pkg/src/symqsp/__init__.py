"""Symmetric quantum-signal-processing phase factors by fixed-point iteration."""

from ._kernels import backend
from .analysis import (
    DecayProfile,
    abs_x_cubed_target,
    check_decay_bound,
    decay_profile,
    max_pointwise_error,
)
from .chebyshev import (
    ChebyshevCoefficients,
    NodeGrid,
    bessel_j,
    bessel_j_sequence,
    coeffs_of_samples,
    dft_real,
    forward_map,
    full_coefficients,
    jacobi_anger,
    node_grid,
)
from .kernel import (
    DomainError,
    Parity,
    ReducedPhaseFactors,
    expand_symmetric,
    g,
    g_full,
    qsp_unitary,
)
from .solver import (
    Constants,
    DivergenceError,
    Guarantee,
    SolverConfig,
    SolverReport,
    constants,
    fpi_solve,
    hessian_entry_norm,
    jacobian,
    jacobian_column,
)

__version__ = "0.1.0"

__all__ = [
    "ChebyshevCoefficients",
    "Constants",
    "DecayProfile",
    "DivergenceError",
    "DomainError",
    "Guarantee",
    "NodeGrid",
    "Parity",
    "ReducedPhaseFactors",
    "SolverConfig",
    "SolverReport",
    "abs_x_cubed_target",
    "backend",
    "bessel_j",
    "bessel_j_sequence",
    "check_decay_bound",
    "coeffs_of_samples",
    "constants",
    "decay_profile",
    "dft_real",
    "expand_symmetric",
    "forward_map",
    "fpi_solve",
    "full_coefficients",
    "g",
    "g_full",
    "hessian_entry_norm",
    "jacobi_anger",
    "jacobian",
    "jacobian_column",
    "max_pointwise_error",
    "node_grid",
    "qsp_unitary",
]
