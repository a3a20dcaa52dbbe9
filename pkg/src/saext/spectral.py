"""Spectra, bound states, and scattering data for the operator catalog."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.integrate import solve_ivp
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq
from scipy.sparse.linalg import eigs as _sparse_eigs

from .core import FINITE, GridFunction, Interval
from .errors import (
    IndeterminateError,
    InvalidIndexError,
    NoRootError,
    PreconditionError,
    TooCoarseError,
    UnsupportedOperatorError,
)

__all__ = [
    "BoundState",
    "ContinuousSpectrum",
    "DiscreteLevel",
    "SpectrumResult",
    "bound_state",
    "bound_state_shooting",
    "dirichlet_fd_eigenvalues",
    "discretized_momentum_eigpair",
    "discretized_momentum_eigs",
    "discretized_momentum_matrix",
    "halfline_robin_spectrum",
    "momentum_spectrum",
    "reflection_coefficient",
    "reflection_phase",
    "scattering_state",
    "well_spectrum",
]

# Dense eigensolves stay fast up to this size; larger twisted rings go
# through shift-invert Arnoldi with a fixed starting vector.
_DENSE_LIMIT = 1024
_ARNOLDI_DEFAULT_COUNT = 32
_ARNOLDI_SEED = 12345


class DiscreteLevel(NamedTuple):
    n: int
    value: float
    eigenfunction: GridFunction


class BoundState(NamedTuple):
    energy: float
    psi: GridFunction


@dataclass(frozen=True)
class ContinuousSpectrum:
    """Descriptor for a scattering branch starting at ``threshold``."""

    threshold: float
    reflection_phase: Callable[[float], float]


@dataclass(frozen=True)
class SpectrumResult:
    discrete: Tuple[DiscreteLevel, ...]
    continuous: Optional[ContinuousSpectrum] = None

    def to_json_dict(self) -> dict:
        out: dict = {
            "discrete": [
                {"n": level.n, "value": level.value} for level in self.discrete
            ]
        }
        out["continuous"] = (
            None
            if self.continuous is None
            else {"threshold": self.continuous.threshold}
        )
        return out


def momentum_spectrum(
    theta: float,
    interval: Interval,
    n_range: Sequence[int],
    grid_n: int = 2001,
) -> SpectrumResult:
    """Point spectrum p_n = (2*pi*n + theta)/L of -i d/dx on a finite box.

    Eigenfunctions are the unit-norm twisted exponentials
    exp(i p_n x)/sqrt(L), which pick up the phase exp(i*theta) from end
    to end.
    """
    if interval.kind != FINITE:
        raise UnsupportedOperatorError(
            "the momentum operator has no self-adjoint version on an "
            "unbounded interval, so there is no spectrum to report"
        )
    a, b = interval.a, interval.b
    length = b - a
    xs = np.linspace(a, b, grid_n)
    levels = []
    for n in sorted(int(n) for n in n_range):
        p = (math.tau * n + theta) / length
        values = np.exp(1j * p * xs) / math.sqrt(length)
        levels.append(DiscreteLevel(n, p, GridFunction(xs, values)))
    return SpectrumResult(tuple(levels))


def well_spectrum(a: float, n_range: Sequence[int], grid_n: int = 2001) -> SpectrumResult:
    """Dirichlet levels E_n = (n*pi/a)^2 with psi_n = sqrt(2/a) sin(n*pi*x/a)."""
    if not a > 0.0:
        raise PreconditionError("well width must be positive, got %r" % (a,))
    ns = sorted(int(n) for n in n_range)
    for n in ns:
        if n <= 0:
            raise InvalidIndexError(
                "well levels are labelled n = 1, 2, ...; got n=%d" % n
            )
    xs = np.linspace(0.0, a, grid_n)
    levels = []
    for n in ns:
        kn = n * math.pi / a
        values = math.sqrt(2.0 / a) * np.sin(kn * xs)
        levels.append(DiscreteLevel(n, kn * kn, GridFunction(xs, values)))
    return SpectrumResult(tuple(levels))


def bound_state(
    alpha: float,
    x_max: Optional[float] = None,
    grid_n: Optional[int] = None,
) -> Optional[BoundState]:
    """Robin bound state on the half line: alpha < 0 gives E = -alpha^2.

    Returns ``None`` when alpha >= 0 (the boundary condition binds
    nothing).  The wave function is sqrt(2|alpha|) exp(alpha*x), unit
    norm on the truncated grid to well below 1e-8.
    """
    if not alpha < 0.0:
        return None
    if x_max is None:
        # cap the window so subnormal alphas cannot overflow the grid
        x_max = 35.0 / max(abs(alpha), 1e-12)
    if grid_n is None:
        grid_n = 3501
    xs = np.linspace(0.0, x_max, grid_n)
    psi = math.sqrt(2.0 * abs(alpha)) * np.exp(alpha * xs)
    return BoundState(-alpha * alpha, GridFunction(xs, psi))


def bound_state_shooting(
    alpha: float,
    e_bracket: Tuple[float, float],
    x_max: Optional[float] = None,
    ode_rtol: float = 1e-10,
) -> float:
    """Locate the Robin bound-state energy by inward shooting.

    Integrates psi'' = -E psi from ``x_max`` toward the origin with
    decaying far-field data and bisects the boundary mismatch
    psi'(0) - alpha*psi(0).  Independent of the closed form: the root
    should land on -alpha^2.
    """
    if not alpha < 0.0:
        raise PreconditionError(
            "only alpha < 0 supports a bound state; got alpha=%r" % (alpha,)
        )
    lo, hi = (float(e_bracket[0]), float(e_bracket[1]))
    if lo > hi:
        lo, hi = hi, lo
    if hi >= 0.0:
        raise PreconditionError("energy bracket must be negative, got %r" % (e_bracket,))
    if x_max is None:
        # keep the backward-grown amplitude exp(kappa*x_max) far from overflow
        kappa_max = math.sqrt(-lo)
        x_max = min(35.0 / abs(alpha), 600.0 / kappa_max)

    def mismatch(energy: float) -> float:
        kappa = math.sqrt(-energy)

        def rhs(_x, y):
            return (y[1], -energy * y[0])

        sol = solve_ivp(
            rhs,
            (x_max, 0.0),
            (1.0, -kappa),
            method="DOP853",
            rtol=ode_rtol,
            atol=1e-300,
        )
        psi0, dpsi0 = sol.y[0, -1], sol.y[1, -1]
        return (dpsi0 - alpha * psi0) / (abs(psi0) + abs(dpsi0))

    f_lo, f_hi = mismatch(lo), mismatch(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise NoRootError(
            "boundary mismatch does not change sign on [%g, %g]" % (lo, hi)
        )
    return float(brentq(mismatch, lo, hi, xtol=1e-9, rtol=8.9e-16))


def reflection_coefficient(k: float, alpha: float) -> complex:
    """Unit-modulus reflection amplitude R = (ik + alpha)/(ik - alpha)."""
    if math.isinf(alpha):
        # hard-wall limit of the Robin family
        return complex(-1.0, 0.0)
    if k == 0.0 and alpha == 0.0:
        raise IndeterminateError(
            "R is indeterminate at k=0 with a Neumann boundary"
        )
    return complex(alpha, k) / complex(-alpha, k)


def reflection_phase(k: float, alpha: float) -> float:
    """Phase shift of the reflected wave, reduced to [0, 2*pi)."""
    return (-cmath.phase(reflection_coefficient(k, alpha))) % math.tau


def scattering_state(k: float, alpha: float, xs: np.ndarray) -> GridFunction:
    """Stationary scattering solution exp(-ikx) + R exp(ikx), unnormalized."""
    if not k > 0.0:
        raise PreconditionError("scattering states need k > 0, got k=%r" % (k,))
    r = reflection_coefficient(k, alpha)
    grid = np.asarray(xs, dtype=float)
    values = np.exp(-1j * k * grid) + r * np.exp(1j * k * grid)
    return GridFunction(grid, values)


def halfline_robin_spectrum(
    alpha: float,
    x_max: Optional[float] = None,
    grid_n: Optional[int] = None,
) -> SpectrumResult:
    """Full spectral data of the Robin half-line Hamiltonian.

    Discrete part: the single bound state when alpha < 0.  Continuous
    part: the scattering branch [0, inf) with its reflection phase.
    """
    discrete: Tuple[DiscreteLevel, ...] = ()
    state = bound_state(alpha, x_max=x_max, grid_n=grid_n)
    if state is not None:
        discrete = (DiscreteLevel(0, state.energy, state.psi),)
    branch = ContinuousSpectrum(0.0, lambda k: reflection_phase(k, alpha))
    return SpectrumResult(discrete, branch)


def discretized_momentum_matrix(theta: float, n: int, as_sparse: bool = False):
    """One-sided difference matrix for -i d/dx on a theta-twisted ring.

    Row j holds (-i/h)(psi_{j+1} - psi_j) with h = 1/n; the last row
    wraps around with the twist factor exp(i*theta).
    """
    if n < 64:
        raise TooCoarseError("twisted ring needs n >= 64, got n=%d" % n)
    scale = 1j * n  # i/h
    wrap = -scale * cmath.exp(1j * theta)
    if as_sparse:
        mat = sparse.diags(
            [np.full(n, scale), np.full(n - 1, -scale)],
            offsets=[0, 1],
            format="lil",
            dtype=complex,
        )
        mat[n - 1, 0] = wrap
        return mat.tocsc()
    mat = np.zeros((n, n), dtype=complex)
    np.fill_diagonal(mat, scale)
    idx = np.arange(n - 1)
    mat[idx, idx + 1] = -scale
    mat[n - 1, 0] = wrap
    return mat


def discretized_momentum_eigpair(theta: float, n: int, mode: int):
    """Closed-form eigenpair of the twisted difference matrix.

    The vector exp(i*phi*j)/sqrt(n) with phi = (2*pi*mode + theta)/n is
    an exact eigenvector with eigenvalue -i*n*(exp(i*phi) - 1).
    """
    if n < 64:
        raise TooCoarseError("twisted ring needs n >= 64, got n=%d" % n)
    phi = (math.tau * mode + theta) / n
    lam = -1j * n * (cmath.exp(1j * phi) - 1.0)
    vec = np.exp(1j * phi * np.arange(n)) / math.sqrt(n)
    return lam, vec


def discretized_momentum_eigs(
    theta: float, n: int, count: Optional[int] = None
) -> List[complex]:
    """Eigenvalues of the twisted difference matrix, sorted by modulus.

    The matrix is not normal, so the eigenvalues sit slightly off the
    real axis; their real parts approach 2*pi*m + theta at first order
    in 1/n.  Above the dense cutoff only the ``count`` smallest-modulus
    eigenvalues are computed (shift-invert Arnoldi, fixed start vector,
    fully deterministic).
    """
    if n < 64:
        raise TooCoarseError("twisted ring needs n >= 64, got n=%d" % n)
    if n <= _DENSE_LIMIT:
        vals = np.linalg.eigvals(discretized_momentum_matrix(theta, n))
    else:
        k = _ARNOLDI_DEFAULT_COUNT if count is None else count
        rng = np.random.default_rng(_ARNOLDI_SEED)
        v0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        vals = _sparse_eigs(
            discretized_momentum_matrix(theta, n, as_sparse=True),
            k=k,
            sigma=-0.5j,
            which="LM",
            v0=v0,
            return_eigenvectors=False,
        )
    order = np.lexsort((vals.imag, vals.real, np.abs(vals)))
    vals = vals[order]
    if count is not None:
        vals = vals[:count]
    return [complex(v) for v in vals]


def dirichlet_fd_eigenvalues(a: float, n_grid: int, count: int) -> List[float]:
    """Lowest eigenvalues of the three-point Dirichlet Laplacian on [0, a].

    Second-order cross-check for the closed-form well levels: the
    discrete values (2/h^2)(1 - cos(m*pi*h/a)) converge to (m*pi/a)^2
    like h^2.
    """
    if not a > 0.0:
        raise PreconditionError("well width must be positive, got %r" % (a,))
    if n_grid < 8:
        raise TooCoarseError("need at least 8 interior cells, got %d" % n_grid)
    h = a / n_grid
    diag = np.full(n_grid - 1, 2.0 / (h * h))
    off = np.full(n_grid - 2, -1.0 / (h * h))
    vals = eigh_tridiagonal(
        diag, off, select="i", select_range=(0, count - 1), eigvals_only=True
    )
    return [float(v) for v in vals]
