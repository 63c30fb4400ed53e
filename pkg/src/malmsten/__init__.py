"""High-precision verification of integral representations of odd zeta and even beta values."""

__version__ = "0.1.0"

from .constants import ConstantId, constant  # noqa: E402
from .errors import (  # noqa: E402
    DivergenceError,
    DomainError,
    InsufficientPrecisionError,
    MalmstenError,
    PrecisionFailure,
    UnknownIdError,
)
from .identities import IdentitySpec, get_identity, identity_registry  # noqa: E402
from .kernels import KernelSpec, eval_integrand, parse_kernel  # noqa: E402
from .precision import PrecisionReal  # noqa: E402
from .quadrature import QuadratureResult, integrate, integrate_combination, verify_identity  # noqa: E402
from .reconstruct import (  # noqa: E402
    fourier_partial_sum,
    poly_family,
    pslq,
    rational_reconstruct,
    solve_coeffs,
    verify_kyrion,
)

__all__ = [
    "ConstantId",
    "DivergenceError",
    "DomainError",
    "IdentitySpec",
    "InsufficientPrecisionError",
    "KernelSpec",
    "MalmstenError",
    "PrecisionFailure",
    "PrecisionReal",
    "QuadratureResult",
    "UnknownIdError",
    "constant",
    "eval_integrand",
    "fourier_partial_sum",
    "get_identity",
    "identity_registry",
    "integrate",
    "integrate_combination",
    "parse_kernel",
    "poly_family",
    "pslq",
    "rational_reconstruct",
    "solve_coeffs",
    "verify_identity",
    "verify_kyrion",
]
