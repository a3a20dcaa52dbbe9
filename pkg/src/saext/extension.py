r"""Map the extension phase gamma to a concrete boundary condition.

Both catalog cases with indices (1,1) have a one-parameter family of
self-adjoint domains labelled by the phase of a 1x1 unitary, U = e^{i gamma}.
A domain element is

    xi = psi + psi_plus + e^{i gamma} psi_minus

with psi in the raw restrictive domain and psi_+- the normalized deficiency
pair.  The physical boundary condition is read off the deficiency
contribution at the boundary:

    momentum on [0,1]:   xi(1)/xi(0) = (1 + beta e)/(e + beta), beta = e^{i gamma},
                         a pure phase e^{i theta}  ->  psi(1) = e^{i theta} psi(0)
    Hamiltonian on R+:   alpha = xi'(0)/xi(0), real  ->  psi'(0) = alpha psi(0),
                         with gamma = pi the Dirichlet limit alpha -> inf.

For the half line the ratio is evaluated through the conjugate-pair
factorization xi(0) = 2 Re(e^{-i gamma/2} psi_plus(0)) e^{i gamma/2} (using
psi_minus = conj(psi_plus)), which is the same number as the naive complex
division but stays accurate near gamma = pi where 1 + e^{i gamma} cancels;
the naive route and the modulus identity
|alpha|^2 (1 + cos gamma) = 1 - sin gamma serve as cross-checks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    FINITE,
    HALF_LINE,
    BoundaryCondition,
    GridFunction,
    derivative_values,
)
from .deficiency import DeficiencyReport
from .errors import PreconditionError, UnsupportedExtensionError

__all__ = [
    "ExtensionParameter",
    "momentum_bc_from_unitary",
    "halfline_bc_from_unitary",
    "assemble_domain_element",
]

#: Deficiency data entering the ratios, evaluated at the boundary.
#: Momentum on [0,1] (lambda=1): psi_+- = C_+- e^{-+x} with unit L2 norm.
_C_PLUS = math.sqrt(2.0) * math.e / math.sqrt(math.e**2 - 1.0)
_C_MINUS = math.sqrt(2.0) / math.sqrt(math.e**2 - 1.0)
#: Hamiltonian on [0,inf): psi_+ = 2^{1/4} e^{mu x}, mu = (i-1)/sqrt2,
#: psi_- = conj(psi_+).
_H_PSI0 = 2.0**0.25
_H_MU = (1j - 1.0) / math.sqrt(2.0)


@dataclass(frozen=True)
class ExtensionParameter:
    """Phase of the 1x1 von Neumann unitary, stored reduced to [0, 2pi)."""

    gamma: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", float(self.gamma) % (2.0 * math.pi))


def _gamma_of(gamma: float | ExtensionParameter) -> float:
    if isinstance(gamma, ExtensionParameter):
        return gamma.gamma
    return float(gamma)


def momentum_bc_from_unitary(gamma: float | ExtensionParameter) -> BoundaryCondition:
    """Phase boundary condition psi(1) = e^{i theta} psi(0) for the momentum family.

    theta is the argument of xi(1)/xi(0) = (1 + beta e)/(e + beta); the ratio
    is checked to be a pure phase before returning.
    """
    g = _gamma_of(gamma)
    beta = cmath.exp(1j * g)
    ratio = (_C_PLUS / math.e + beta * _C_MINUS * math.e) / (_C_PLUS + beta * _C_MINUS)
    if abs(abs(ratio) - 1.0) > 1e-12:
        raise AssertionError(f"momentum ratio modulus {abs(ratio)!r} is not 1")
    return BoundaryCondition.phase(cmath.phase(ratio) % (2.0 * math.pi))


def halfline_bc_from_unitary(gamma: float | ExtensionParameter) -> BoundaryCondition:
    """Robin condition psi'(0) = alpha psi(0) for the half-line Hamiltonian family.

    gamma = pi (within 1e-12 of cos(gamma/2) = 0) returns robin(inf), the
    Dirichlet limit psi(0) = 0.
    """
    g = _gamma_of(gamma)
    half = 0.5 * g
    # xi(0)  = e^{i g/2} * 2 Re(e^{-i g/2} psi_+(0))
    # xi'(0) = e^{i g/2} * 2 Re(e^{-i g/2} psi_+'(0)); the common phase cancels
    denom = (cmath.exp(-1j * half) * _H_PSI0).real
    numer = (cmath.exp(-1j * half) * _H_MU * _H_PSI0).real
    if abs(denom) < 1e-12 * _H_PSI0:
        return BoundaryCondition.robin(math.inf)
    alpha = complex(numer / denom, 0.0)
    if abs(alpha.imag) > 1e-12:  # structurally zero for real numer/denom
        raise AssertionError(f"alpha acquired an imaginary part: {alpha!r}")
    # modulus identity in half-angle form (stable against 1 + cos gamma
    # cancellation near gamma = pi)
    lhs = alpha.real**2 * 2.0 * math.cos(half) ** 2
    rhs = (math.sin(half) - math.cos(half)) ** 2
    if abs(lhs - rhs) > 1e-12 * max(1.0, abs(rhs)):
        raise AssertionError("modulus identity |alpha|^2(1+cos g) = 1-sin g failed")
    return BoundaryCondition.robin(alpha.real)


def _raw_violation(underlying: GridFunction, interval_kind: str) -> float:
    """How far the underlying function is from the raw restrictive domain."""
    scale = max(float(np.max(np.abs(underlying.values))), 1.0)
    if interval_kind == FINITE:
        return max(abs(underlying.values[0]), abs(underlying.values[-1])) / scale
    d0 = derivative_values(underlying.xs, underlying.values, order=1, acc=4)[0]
    return max(abs(underlying.values[0]), abs(d0)) / scale


def assemble_domain_element(underlying: GridFunction,
                            gamma: float | ExtensionParameter,
                            report: DeficiencyReport) -> GridFunction:
    """xi = psi + psi_plus + e^{i gamma} psi_minus on the grid of ``underlying``.

    ``underlying`` must satisfy the raw restrictive condition (vanishing
    endpoint data within 1e-8); the result satisfies the boundary condition
    of the matching *_bc_from_unitary map for the same gamma.
    """
    if not (report.n_plus == report.n_minus == 1):
        raise UnsupportedExtensionError(
            f"extensions need indices (1,1), got ({report.n_plus},{report.n_minus})")
    g = _gamma_of(gamma)
    kind = report.basis_plus[0].interval.kind
    if _raw_violation(underlying, kind) > 1e-8:
        raise PreconditionError(
            "underlying function violates the raw restrictive boundary condition")
    xs = underlying.xs
    psi_plus = report.basis_plus[0].closed_form(xs)
    psi_minus = report.basis_minus[0].closed_form(xs)
    xi = underlying.values + psi_plus + cmath.exp(1j * g) * psi_minus
    return underlying.with_values(xi)
