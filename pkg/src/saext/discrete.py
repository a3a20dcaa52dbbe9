"""Finite-dimensional and basis-dependent commutator demonstrations.

Each demo produces a :class:`ParadoxReport` pairing a naive expectation
(what the canonical commutation relation "should" give) with the value
the computation actually yields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, NamedTuple, Tuple, Union

import numpy as np

from .core import GridFunction, UnitSystem, derivative_values, inner_product, norm
from .errors import PreconditionError
from .spectral import discretized_momentum_eigpair, discretized_momentum_matrix, well_spectrum

__all__ = [
    "CosineBasisResult",
    "ParadoxReport",
    "Quantity",
    "commuting_observables_demo",
    "cosine_basis_momentum_entry",
    "cosine_basis_momentum_matrix",
    "eigenvector_commutator_demo",
    "hermiticity_defect_demo",
    "trace_commutator_check",
]


class Quantity(NamedTuple):
    """A reported number together with the tolerance it was established at."""

    value: Union[float, complex]
    tolerance: float


@dataclass(frozen=True)
class ParadoxReport:
    id: int
    quantities: Dict[str, Quantity]
    verdict: str

    def to_json_dict(self) -> dict:
        out: dict = {"id": self.id, "verdict": self.verdict, "quantities": {}}
        for name, q in sorted(self.quantities.items()):
            v = q.value
            if isinstance(v, complex):
                encoded: object = {"re": v.real, "im": v.imag}
            else:
                encoded = float(v)
            out["quantities"][name] = {"value": encoded, "tolerance": q.tolerance}
        return out


def trace_commutator_check(
    n: int,
    trials: int,
    seed: int = 0,
    units: UnitSystem = UnitSystem(),
) -> ParadoxReport:
    """Trace of any finite commutator vanishes, yet naively Tr[x,p] = i*hbar*N.

    Draws ``trials`` random Hermitian pairs and reports the largest
    commutator trace relative to the Frobenius norms, next to the
    i*hbar*dim value the canonical relation would demand.
    """
    if n < 2:
        raise PreconditionError("need a matrix dimension of at least 2, got %d" % n)
    if trials < 1:
        raise PreconditionError("need at least one trial, got %d" % trials)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        p = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        x = 0.5 * (x + x.conj().T)
        p = 0.5 * (p + p.conj().T)
        tr = np.trace(x @ p) - np.trace(p @ x)
        scale = np.linalg.norm(x) * np.linalg.norm(p)
        worst = max(worst, abs(tr) / scale)
    naive = complex(0.0, units.hbar * n)
    return ParadoxReport(
        id=2,
        quantities={
            "max_scaled_trace": Quantity(worst, 1e-10),
            "naive_canonical_trace": Quantity(naive, 0.0),
        },
        verdict=(
            "Tr[X,P] vanishes to rounding for every Hermitian pair, so no "
            "finite-dimensional pair can satisfy [X,P] = i*hbar*1."
        ),
    )


def cosine_basis_momentum_entry(l: float, m: int, n: int) -> complex:
    """Closed form for (e_m, -i d/dx e_n) in the cosine basis on [0, l]."""
    if (m + n) % 2 == 0:
        return 0.0 + 0.0j
    return complex(0.0, 4.0 * n * n / (l * (n * n - m * m)))


class CosineBasisResult(NamedTuple):
    p: np.ndarray
    defect: np.ndarray


#: Gauss-Legendre node count; converges past machine precision for the
#: trigonometric integrands well before M reaches the tested sizes.
_GL_NODES = 200


def cosine_basis_momentum_matrix(l: float, m_basis: int) -> CosineBasisResult:
    """Momentum matrix in the basis e_n = sqrt(2/l) cos(n*pi*x/l), n >= 1.

    Returns the matrix p_mn = (e_m, -i d/dx e_n) by quadrature and the
    hermiticity defect d_mn = conj(p_nm) - p_mn.  The defect vanishes
    for m+n even and equals -4i/l on the whole m+n-odd sublattice: the
    matrix fails to be Hermitian because the basis functions do not
    vanish at the endpoints.
    """
    if m_basis < 2:
        raise PreconditionError("need at least a 2x2 block, got M=%d" % m_basis)
    if not l > 0.0:
        raise PreconditionError("interval length must be positive, got %r" % (l,))
    nodes, weights = np.polynomial.legendre.leggauss(_GL_NODES)
    xs = 0.5 * l * (nodes + 1.0)
    ws = 0.5 * l * weights
    p = np.zeros((m_basis, m_basis), dtype=complex)
    for mi in range(1, m_basis + 1):
        em = math.sqrt(2.0 / l) * np.cos(mi * math.pi * xs / l)
        for ni in range(1, m_basis + 1):
            # -i d/dx e_n = i (n*pi/l) sqrt(2/l) sin(n*pi*x/l)
            pen = 1j * (ni * math.pi / l) * math.sqrt(2.0 / l) * np.sin(
                ni * math.pi * xs / l
            )
            p[mi - 1, ni - 1] = np.sum(ws * em * pen)
    defect = p.conj().T - p
    return CosineBasisResult(p, defect)


def hermiticity_defect_demo(l: float, m_basis: int) -> ParadoxReport:
    """Wrap the cosine-basis defect pattern as a reportable demonstration."""
    result = cosine_basis_momentum_matrix(l, m_basis)
    even_max = 0.0
    odd_dev = 0.0
    for mi in range(1, m_basis + 1):
        for ni in range(1, m_basis + 1):
            d = result.defect[mi - 1, ni - 1]
            if (mi + ni) % 2 == 0:
                even_max = max(even_max, abs(d))
            else:
                odd_dev = max(odd_dev, abs(d - complex(0.0, -4.0 / l)))
    return ParadoxReport(
        id=4,
        quantities={
            "defect_even_sublattice_max": Quantity(even_max, 1e-12),
            "defect_odd_sublattice_value": Quantity(complex(0.0, -4.0 / l), 1e-10),
            "defect_odd_sublattice_max_deviation": Quantity(odd_dev, 1e-10),
        },
        verdict=(
            "the momentum matrix in the cosine basis is not Hermitian: the "
            "endpoint contributions leave a constant -4i/l defect whenever "
            "m+n is odd."
        ),
    )


def eigenvector_commutator_demo(
    theta: float,
    n: int,
    mode: int = 1,
    units: UnitSystem = UnitSystem(),
) -> ParadoxReport:
    """Expectation of [X, P] in an exact discretized-momentum eigenvector.

    On the twisted ring the product rule collapses: both orderings give
    the eigenvalue times the same position expectation, so the
    commutator expectation vanishes instead of producing i*hbar.
    """
    p_mat = discretized_momentum_matrix(theta, n, as_sparse=True)
    lam, vec = discretized_momentum_eigpair(theta, n, mode)
    xs = np.arange(n) / n
    x_vec = xs * vec
    commutator_expect = complex(
        np.vdot(vec, xs * (p_mat @ vec)) - np.vdot(vec, p_mat @ x_vec)
    )
    residual = float(np.max(np.abs(p_mat @ vec - lam * vec)))
    return ParadoxReport(
        id=1,
        quantities={
            "eigenvector_expectation": Quantity(commutator_expect, 1e-8),
            "canonical_target": Quantity(complex(0.0, units.hbar), 0.0),
            "eigenpair_residual": Quantity(residual, 1e-9 * n),
        },
        verdict=(
            "([X,P]) averaged in a momentum eigenvector vanishes, against "
            "the i*hbar the canonical relation would force; no realization "
            "can keep both the eigenvector and the commutation relation."
        ),
    )


def commuting_observables_demo(a: float, n_max: int, grid_n: int = 10_001) -> ParadoxReport:
    """Box eigenfunctions are nowhere near momentum eigenfunctions.

    For each level n the relative residual of p*psi_n against the best
    multiple of psi_n is reported; since the derivative of a sine is a
    cosine, orthogonal to it, every residual sits at 1.
    """
    if not a > 0.0:
        raise PreconditionError("well width must be positive, got %r" % (a,))
    if n_max < 1:
        raise PreconditionError("need n_max >= 1, got %d" % n_max)
    spectrum = well_spectrum(a, range(1, n_max + 1), grid_n=grid_n)
    quantities = {}
    for level in spectrum.discrete:
        psi = level.eigenfunction
        p_psi = GridFunction(
            psi.xs, -1j * derivative_values(psi.xs, psi.values, 1, acc=4)
        )
        coeff = inner_product(psi, p_psi) / inner_product(psi, psi)
        residual_fn = GridFunction(psi.xs, p_psi.values - coeff * psi.values)
        r = norm(residual_fn) / norm(p_psi)
        quantities["r_%d" % level.n] = Quantity(r, 1e-10)
    return ParadoxReport(
        id=3,
        quantities=quantities,
        verdict=(
            "every box eigenfunction has residual ~1 against being a "
            "momentum eigenfunction, so commuting with H cannot be "
            "inferred the naive way."
        ),
    )
