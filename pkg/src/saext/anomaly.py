"""Domain-induced breaking of the scale symmetry on the half line.

The dilatation generator fails to preserve the Robin domain, and the
resulting commutator defect -- evaluated here by plain quadrature plus
finite differences -- lands exactly on the bound-state energy -alpha^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .classical import (
    MonomialObservable,
    PowerLawPotential,
    dilatation_observable,
    hamiltonian_observable,
    poisson_bracket,
    total_time_derivative,
)
from .core import GridFunction, derivative_values, inner_product
from .errors import DegenerateGridError, DomainViolationError, NoBoundStateError
from .spectral import bound_state

__all__ = [
    "AnomalyReport",
    "ClassicalSymmetryVerdict",
    "anomaly_quadrature",
    "apply_dilatation",
    "classical_symmetry_check",
    "heisenberg_correction",
]


@dataclass(frozen=True)
class AnomalyReport:
    alpha: float
    t: float
    term_Hpsi_Dpsi: complex
    term_psi_HDpsi: complex
    anomaly: float
    bound_energy: float
    residual: float
    tolerance: float

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "t": self.t,
            "term_Hpsi_Dpsi": {
                "re": self.term_Hpsi_Dpsi.real,
                "im": self.term_Hpsi_Dpsi.imag,
            },
            "term_psi_HDpsi": {
                "re": self.term_psi_HDpsi.real,
                "im": self.term_psi_HDpsi.imag,
            },
            "anomaly": self.anomaly,
            "bound_energy": self.bound_energy,
            "residual": self.residual,
            "tolerance": self.tolerance,
        }


def _dilatation_pieces(psi: GridFunction, t: float):
    """(t * H psi, G psi) with G = (x p + p x)/4 = -(i/4)(2x d/dx + 1)."""
    d1 = derivative_values(psi.xs, psi.values, 1, acc=4)
    g_psi = -0.25j * (2.0 * psi.xs * d1 + psi.values)
    h_psi = None
    if t != 0.0:
        h_psi = -derivative_values(psi.xs, psi.values, 2, acc=4)
    return h_psi, g_psi


def apply_dilatation(psi: GridFunction, t: float) -> GridFunction:
    """t * H psi - G psi by interior 4th-order finite differences.

    The Hamiltonian term needs a 7-point stencil, the first-derivative
    part only 5; grids below that are rejected.
    """
    needed = 5 if t == 0.0 else 7
    if len(psi) < needed:
        raise DegenerateGridError(
            "dilatation needs at least %d grid points, got %d" % (needed, len(psi))
        )
    h_psi, g_psi = _dilatation_pieces(psi, t)
    values = -g_psi if h_psi is None else t * h_psi - g_psi
    return GridFunction(psi.xs, values, weight=psi.weight)


def anomaly_quadrature(
    alpha: float,
    t: float = 0.0,
    x_max: Optional[float] = None,
    grid_n: Optional[int] = None,
) -> AnomalyReport:
    """Evaluate i[(H psi, D psi) - (psi, H D psi)] on the bound state.

    Both terms carry the same t * (H psi, H psi) piece, computed once so
    the cancellation is structural; what survives is the boundary
    mismatch between moving H across the inner product, and it equals
    the bound-state energy.
    """
    state = bound_state(alpha, x_max=x_max, grid_n=grid_n)
    if state is None:
        raise NoBoundStateError(
            "no bound state for alpha=%r; the anomaly needs alpha < 0" % (alpha,)
        )
    psi = state.psi
    d1 = derivative_values(psi.xs, psi.values, 1, acc=4)
    h_psi = GridFunction(psi.xs, -derivative_values(psi.xs, psi.values, 2, acc=4))
    g_psi = GridFunction(psi.xs, -0.25j * (2.0 * psi.xs * d1 + psi.values))
    hg_psi = GridFunction(
        psi.xs, -derivative_values(psi.xs, g_psi.values, 2, acc=4)
    )
    c_h = inner_product(h_psi, h_psi)
    term_1 = t * c_h - inner_product(h_psi, g_psi)
    term_2 = t * c_h - inner_product(psi, hg_psi)
    anomaly_value = 1j * (term_1 - term_2)
    energy = state.energy
    return AnomalyReport(
        alpha=alpha,
        t=t,
        term_Hpsi_Dpsi=term_1,
        term_psi_HDpsi=term_2,
        anomaly=anomaly_value.real,
        bound_energy=energy,
        residual=abs(anomaly_value.real - energy),
        tolerance=1e-6,
    )


#: Robin mismatch above this (scale-normalized) marks psi as outside the domain.
_ROBIN_TOL = 1e-6


def heisenberg_correction(psi: GridFunction, alpha: float, t: float = 0.0) -> complex:
    """Anomalous commutator piece i[(H psi, D psi) - (psi, H D psi)].

    Both inner products are computed head-on by quadrature; their
    mismatch is the surface term that moving H across (., .) leaves
    behind.  It vanishes for functions supported away from the
    boundary and reproduces the anomaly on the bound state.
    """
    if len(psi) < 7:
        raise DegenerateGridError(
            "boundary correction needs at least 7 grid points, got %d" % len(psi)
        )
    d1 = derivative_values(psi.xs, psi.values, 1, acc=4)
    amp = float(np.max(np.abs(psi.values)))
    violation = abs(d1[0] - alpha * psi.values[0]) / ((1.0 + abs(alpha)) * max(amp, 1e-300))
    if violation > _ROBIN_TOL:
        raise DomainViolationError(
            "psi'(0) = alpha psi(0) violated at scaled level %.3e" % violation
        )
    d_psi = apply_dilatation(psi, t)
    h_psi = GridFunction(psi.xs, -derivative_values(psi.xs, psi.values, 2, acc=4))
    h_d_psi = GridFunction(psi.xs, -derivative_values(psi.xs, d_psi.values, 2, acc=4))
    return 1j * (inner_product(h_psi, d_psi) - inner_product(psi, h_d_psi))


class ClassicalSymmetryVerdict(NamedTuple):
    bracket_is_hamiltonian: bool
    free_dilatation_conserved: bool
    inverse_square_dilatation_conserved: bool
    text: str


def classical_symmetry_check() -> ClassicalSymmetryVerdict:
    """Exact symbolic statement that the classical symmetry is unbroken.

    {H, D} = H and dD/dt = dD/dt|_explicit + {D, H} = 0, both for the
    free particle and with the inverse-square potential added.
    """
    h_free = MonomialObservable.single(1, p_pow=2)
    d_free = dilatation_observable(h_free)
    bracket_ok = poisson_bracket(h_free, d_free) == h_free
    free_ok = total_time_derivative(d_free, h_free).is_zero

    h_inv = hamiltonian_observable(PowerLawPotential(1.0, -2))
    d_inv = dilatation_observable(h_inv)
    inv_ok = total_time_derivative(d_inv, h_inv).is_zero

    all_ok = bracket_ok and free_ok and inv_ok
    text = (
        "classical scale symmetry holds exactly: {H,D}=H and dD/dt=0, "
        "also with V = q^-2"
        if all_ok
        else "classical symmetry check FAILED"
    )
    return ClassicalSymmetryVerdict(bracket_ok, free_ok, inv_ok, text)
