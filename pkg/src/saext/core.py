r"""Grids, quadrature, finite differences, and the endpoint boundary forms.

Everything downstream works with :class:`GridFunction`: complex samples on a
strictly increasing 1D grid together with a measure weight w(x) >= 0, so that
the inner product is the weighted L2 pairing

    (f, g) = int conj(f(x)) g(x) w(x) dx.

The two boundary forms are the endpoint expressions whose vanishing
characterises symmetric domains:

    momentum  -i d/dx :   delta_p(xi, eta) = -i [ conj(xi(b)) eta(b) - conj(xi(a)) eta(a) ]
    Hamiltonian -d2/dx2 : delta_H(xi, eta) = conj(xi(0)) eta'(0) - conj(xi'(0)) eta(0)

Quadrature is composite Simpson on uniform grids with an odd point count and
trapezoid otherwise.  Both rules have positive weights and are applied as a
single real-coefficient linear functional of the sampled integrand, which is
what makes conjugate symmetry (f,g) = conj((g,f)) and Im (f,f) = 0 hold to the
last bit, not just to rounding.

Derivatives use Fornberg's algorithm for finite-difference weights on
arbitrary nodes: centred stencils in the interior, one-sided stencils of at
least the same order at the edges.  The default (order 4) is what the
Hamiltonian boundary form needs to resolve endpoint derivatives more
accurately than the quadrature error.

Default units are hbar = 1 and 2m = 1, so the free Hamiltonian is exactly
-d2/dx2; :class:`UnitSystem` carries the conversion factors back to physical
energies and momenta.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateGridError,
    GridMismatchError,
    UnsupportedBoundaryError,
)

__all__ = [
    "FULL_LINE",
    "HALF_LINE",
    "FINITE",
    "MOMENTUM",
    "FREE_HAMILTONIAN",
    "TIME_OPERATOR",
    "WEIGHTS",
    "Interval",
    "UnitSystem",
    "OperatorSpec",
    "BoundaryCondition",
    "GridFunction",
    "quadrature_weights",
    "inner_product",
    "norm",
    "fd_weights",
    "derivative_values",
    "derivative",
    "boundary_form_momentum",
    "boundary_form_hamiltonian",
]

FULL_LINE = "full_line"
HALF_LINE = "half_line"
FINITE = "finite"

MOMENTUM = "momentum"
FREE_HAMILTONIAN = "free_hamiltonian"
TIME_OPERATOR = "time_operator"

#: Registry of measure-weight descriptors.  Serialized files carry the id, not
#: the samples, so adding an entry here extends the file format.
WEIGHTS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "1": lambda x: np.ones_like(x, dtype=float),
    "r": lambda x: np.asarray(x, dtype=float).copy(),
    "r^2": lambda x: np.asarray(x, dtype=float) ** 2,
}


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """A 1D domain: the full line, a half line [a, inf), or finite [a, b]."""

    kind: str
    a: float = -math.inf
    b: float = math.inf

    def __post_init__(self) -> None:
        if self.kind not in (FULL_LINE, HALF_LINE, FINITE):
            raise ValueError(f"unknown interval kind {self.kind!r}")
        if self.kind == FINITE:
            if not (math.isfinite(self.a) and math.isfinite(self.b)):
                raise ValueError("finite interval needs finite endpoints")
            if not self.a < self.b:
                raise ValueError("finite interval needs a < b")
        elif self.kind == HALF_LINE:
            if not math.isfinite(self.a):
                raise ValueError("half line needs a finite left endpoint")
            object.__setattr__(self, "b", math.inf)
        else:
            object.__setattr__(self, "a", -math.inf)
            object.__setattr__(self, "b", math.inf)

    @classmethod
    def finite(cls, a: float, b: float) -> "Interval":
        return cls(FINITE, float(a), float(b))

    @classmethod
    def half_line(cls, a: float = 0.0) -> "Interval":
        return cls(HALF_LINE, float(a))

    @classmethod
    def full_line(cls) -> "Interval":
        return cls(FULL_LINE)

    @property
    def length(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class UnitSystem:
    """hbar and 2m.  Defaults give H = -d2/dx2 and p = -i d/dx exactly."""

    hbar: float = 1.0
    two_m: float = 1.0

    def __post_init__(self) -> None:
        if not (self.hbar > 0 and self.two_m > 0):
            raise ValueError("hbar and two_m must be positive")

    def energy(self, value: float) -> float:
        """Convert an energy from natural (hbar=1, 2m=1) units."""
        return value * self.hbar**2 / self.two_m

    def momentum(self, value: float) -> float:
        """Convert a momentum from natural units."""
        return value * self.hbar


@dataclass(frozen=True)
class OperatorSpec:
    """Which catalog operator on which interval, with unit conventions."""

    kind: str
    interval: Interval
    units: UnitSystem = UnitSystem()

    def __post_init__(self) -> None:
        if self.kind not in (MOMENTUM, FREE_HAMILTONIAN, TIME_OPERATOR):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.kind == TIME_OPERATOR and self.interval.kind != HALF_LINE:
            # the conjugate energy variable is bounded below at E0
            raise ValueError("time operator requires a half-line interval [E0, inf)")

    @classmethod
    def momentum(cls, interval: Interval, units: UnitSystem = UnitSystem()) -> "OperatorSpec":
        return cls(MOMENTUM, interval, units)

    @classmethod
    def free_hamiltonian(cls, interval: Interval | None = None,
                         units: UnitSystem = UnitSystem()) -> "OperatorSpec":
        return cls(FREE_HAMILTONIAN, interval or Interval.half_line(), units)

    @classmethod
    def time_operator(cls, e0: float = 0.0, units: UnitSystem = UnitSystem()) -> "OperatorSpec":
        return cls(TIME_OPERATOR, Interval.half_line(e0), units)


RAW_RESTRICTIVE = "raw_restrictive"
PHASE = "phase"
ROBIN = "robin"
DIRICHLET = "dirichlet"
NONE = "none"


@dataclass(frozen=True)
class BoundaryCondition:
    """A concrete boundary condition selecting one self-adjoint domain.

    variant ``phase`` carries theta (psi(b) = e^{i theta} psi(a), momentum on a
    finite interval); ``robin`` carries alpha (psi'(0) = alpha psi(0), free
    Hamiltonian on a half line), with alpha = inf denoting the Dirichlet limit
    psi(0) = 0.
    """

    variant: str
    value: float | None = None

    def __post_init__(self) -> None:
        if self.variant not in (RAW_RESTRICTIVE, PHASE, ROBIN, DIRICHLET, NONE):
            raise ValueError(f"unknown boundary-condition variant {self.variant!r}")
        if self.variant == PHASE:
            object.__setattr__(self, "value", float(self.value) % (2.0 * math.pi))
        elif self.variant == ROBIN:
            if self.value is None:
                raise ValueError("robin condition needs a value")
            object.__setattr__(self, "value", float(self.value))
        elif self.value is not None:
            raise ValueError(f"{self.variant} carries no value")

    @classmethod
    def phase(cls, theta: float) -> "BoundaryCondition":
        return cls(PHASE, theta)

    @classmethod
    def robin(cls, alpha: float) -> "BoundaryCondition":
        return cls(ROBIN, alpha)

    @classmethod
    def dirichlet(cls) -> "BoundaryCondition":
        return cls(DIRICHLET)

    @classmethod
    def raw_restrictive(cls) -> "BoundaryCondition":
        return cls(RAW_RESTRICTIVE)

    @classmethod
    def none(cls) -> "BoundaryCondition":
        return cls(NONE)

    @property
    def is_dirichlet_limit(self) -> bool:
        """True for robin(inf), the alpha -> inf limit psi(0)=0."""
        return self.variant == ROBIN and math.isinf(self.value)


# ---------------------------------------------------------------------------
# Grid functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples on a strictly increasing grid with a measure weight.

    Arrays are locked after construction; all operations build new instances.
    """

    xs: np.ndarray
    values: np.ndarray
    weight: str = "1"

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if xs.ndim != 1 or values.ndim != 1 or len(xs) != len(values):
            raise ValueError("xs and values must be 1D arrays of equal length")
        if len(xs) < 2:
            raise DegenerateGridError("grid needs at least 2 points")
        if not np.all(np.diff(xs) > 0):
            raise ValueError("xs must be strictly increasing")
        if self.weight not in WEIGHTS:
            raise ValueError(f"unknown weight descriptor {self.weight!r}")
        if np.any(WEIGHTS[self.weight](xs) < 0):
            raise ValueError("measure weight negative on the grid")
        xs = xs.copy()
        values = values.copy()
        xs.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", values)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_callable(cls, fn: Callable[[np.ndarray], np.ndarray],
                      xs: np.ndarray, weight: str = "1") -> "GridFunction":
        xs = np.asarray(xs, dtype=float)
        return cls(xs, np.asarray(fn(xs), dtype=complex), weight)

    @classmethod
    def uniform(cls, fn: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                n: int, weight: str = "1") -> "GridFunction":
        return cls.from_callable(fn, np.linspace(a, b, n), weight)

    # -- basics -------------------------------------------------------------

    @property
    def w(self) -> np.ndarray:
        """Sampled measure weight."""
        return WEIGHTS[self.weight](self.xs)

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.xs, values, self.weight)

    def __len__(self) -> int:
        return len(self.xs)

    # -- serialization ------------------------------------------------------

    def to_csv(self, path: str) -> None:
        """Write columns x, re, im, w (repr round-trips doubles exactly)."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "re", "im", "w"])
            for x, v, wv in zip(self.xs, self.values, self.w):
                writer.writerow([repr(float(x)), repr(float(v.real)),
                                 repr(float(v.imag)), repr(float(wv))])

    @classmethod
    def from_csv(cls, path: str, weight: str | None = None) -> "GridFunction":
        """Read a CSV written by :meth:`to_csv`.

        The weight descriptor is not stored in CSV; if ``weight`` is not given
        it is recovered by matching the w column against the registry.
        """
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if [h.strip() for h in header] != ["x", "re", "im", "w"]:
                raise ValueError(f"unexpected CSV header {header!r}")
            rows = [[float(c) for c in row] for row in reader if row]
        xs = np.array([r[0] for r in rows])
        values = np.array([complex(r[1], r[2]) for r in rows])
        ws = np.array([r[3] for r in rows])
        if weight is None:
            for wid, fn in WEIGHTS.items():
                if np.allclose(fn(xs), ws, rtol=1e-12, atol=1e-12):
                    weight = wid
                    break
            else:
                raise ValueError("w column matches no registered weight descriptor")
        return cls(xs, values, weight)

    def to_json_dict(self) -> dict:
        return {
            "xs": [float(x) for x in self.xs],
            "re": [float(v.real) for v in self.values],
            "im": [float(v.imag) for v in self.values],
            "weight": self.weight,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "GridFunction":
        xs = np.asarray(d["xs"], dtype=float)
        values = np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)
        return cls(xs, values, d.get("weight", "1"))

    def to_json(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh)

    @classmethod
    def from_json(cls, path: str) -> "GridFunction":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def _require_same_grid(f: GridFunction, g: GridFunction) -> None:
    if f.weight != g.weight or not np.array_equal(f.xs, g.xs):
        raise GridMismatchError("grid functions must share grid and weight")


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def quadrature_weights(xs: np.ndarray) -> np.ndarray:
    """Positive quadrature weights for the grid.

    Uniform grid with an odd number of points: composite Simpson
    (exact for cubics, error O(h^4)).  Anything else: trapezoid.
    """
    xs = np.asarray(xs, dtype=float)
    n = len(xs)
    if n < 2:
        raise DegenerateGridError("quadrature needs at least 2 points")
    h = np.diff(xs)
    uniform = bool(np.all(np.abs(h - h[0]) <= 1e-9 * abs(h[0])))
    if uniform and n >= 3 and n % 2 == 1:
        w = np.full(n, 2.0)
        w[1::2] = 4.0
        w[0] = w[-1] = 1.0
        return w * (h[0] / 3.0)
    w = np.zeros(n)
    w[:-1] += h / 2.0
    w[1:] += h / 2.0
    return w


def inner_product(f: GridFunction, g: GridFunction) -> complex:
    """Weighted L2 inner product (f,g) = int conj(f) g w dx by quadrature.

    Conjugate-symmetric to the last bit, and Im (f,f) is exactly zero.  The
    real and imaginary parts are accumulated separately in plain (non-fused)
    real arithmetic: swapping f and g replaces each elementary product by its
    commuted twin and negates the imaginary accumulator, both of which are
    exact in IEEE arithmetic.  (numpy's vectorized complex multiply uses FMA,
    which would leave O(eps) residue in conj(z)*z.)
    """
    _require_same_grid(f, g)
    c = quadrature_weights(f.xs) * f.w
    fr, fi = f.values.real, f.values.imag
    gr, gi = g.values.real, g.values.imag
    re = float(np.sum(c * (fr * gr + fi * gi)))
    im = float(np.sum(c * (fr * gi - fi * gr)))
    return complex(re, im)


def norm(f: GridFunction) -> float:
    """L2 norm sqrt((f,f))."""
    return math.sqrt(max(inner_product(f, f).real, 0.0))


# ---------------------------------------------------------------------------
# Finite differences
# ---------------------------------------------------------------------------

def fd_weights(x0: float, nodes: Sequence[float], m: int) -> np.ndarray:
    """Weights w_j with sum_j w_j f(nodes_j) ~ f^(m)(x0) (Fornberg 1988).

    Works for arbitrary distinct nodes; accuracy is at least len(nodes) - m.
    """
    nodes = np.asarray(nodes, dtype=float)
    n = len(nodes)
    if m >= n:
        raise ValueError("need more nodes than the derivative order")
    c = np.zeros((n, m + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = nodes[0] - x0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def _window_size(order: int, acc: int) -> int:
    w = order + acc
    if w % 2 == 0:
        w += 1
    return w


def derivative_values(xs: np.ndarray, values: np.ndarray,
                      order: int = 1, acc: int = 4) -> np.ndarray:
    """m-th derivative samples by finite differences of accuracy >= acc.

    Centred stencils in the interior; one-sided stencils of the same window
    at the edges.  Non-uniform grids fall back to per-point Fornberg weights.
    """
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values)
    n = len(xs)
    w = _window_size(order, acc)
    if n < w:
        raise DegenerateGridError(
            f"order-{order} derivative at accuracy {acc} needs >= {w} points")
    h = np.diff(xs)
    uniform = bool(np.all(np.abs(h - h[0]) <= 1e-9 * abs(h[0])))
    out = np.empty(n, dtype=complex if np.iscomplexobj(values) else float)
    if uniform:
        step = h[0]
        offsets = np.arange(w, dtype=float)
        c = w // 2
        centre = fd_weights(c, offsets, order) / step**order
        mid = np.zeros(n - w + 1, dtype=out.dtype)
        for j, sj in enumerate(centre):
            mid += sj * values[j:j + n - w + 1]
        out[c:c + n - w + 1] = mid
        for i in range(c):
            wi = fd_weights(i, offsets, order) / step**order
            out[i] = np.dot(wi, values[:w])
            wj = fd_weights(w - 1 - i, offsets, order) / step**order
            out[n - 1 - i] = np.dot(wj, values[-w:])
        return out
    c = w // 2
    for i in range(n):
        start = min(max(i - c, 0), n - w)
        nodes = xs[start:start + w]
        wi = fd_weights(xs[i], nodes, order)
        out[i] = np.dot(wi, values[start:start + w])
    return out


def derivative(f: GridFunction, order: int = 1, acc: int = 4) -> GridFunction:
    """Derivative of a grid function (same grid and weight)."""
    return f.with_values(derivative_values(f.xs, f.values, order, acc))


# ---------------------------------------------------------------------------
# Boundary forms
# ---------------------------------------------------------------------------

#: Relative size below which an endpoint sample counts as decayed.
_DECAY_TOL = 1e-8


def _decayed(value: complex, scale: float) -> bool:
    return abs(value) <= _DECAY_TOL * max(scale, 1e-300)


def boundary_form_momentum(xi: GridFunction, eta: GridFunction,
                           interval: Interval) -> complex:
    """delta_p(xi, eta) = -i[conj(xi(b)) eta(b) - conj(xi(a)) eta(a)].

    Equals (xi, p eta) - (p xi, eta) up to discretization error; its vanishing
    on a domain is what makes the momentum operator symmetric there.  On
    unbounded intervals the corresponding endpoint term must have decayed on
    the grid, otherwise the form is not defined.
    """
    _require_same_grid(xi, eta)
    scale = float(max(np.max(np.abs(xi.values)), np.max(np.abs(eta.values)), 1e-300))
    term_a = np.conj(xi.values[0]) * eta.values[0]
    term_b = np.conj(xi.values[-1]) * eta.values[-1]
    if interval.kind == FINITE:
        return complex(-1j * (term_b - term_a))
    if interval.kind == HALF_LINE:
        if not (_decayed(xi.values[-1], scale) and _decayed(eta.values[-1], scale)):
            raise UnsupportedBoundaryError(
                "half-line boundary form needs decay at the far end")
        return complex(1j * term_a)
    if not all(_decayed(v, scale) for v in
               (xi.values[0], xi.values[-1], eta.values[0], eta.values[-1])):
        raise UnsupportedBoundaryError(
            "full-line boundary form needs decay at both ends")
    return 0.0 + 0.0j


def boundary_form_hamiltonian(xi: GridFunction, eta: GridFunction,
                              acc: int = 4) -> complex:
    """delta_H(xi, eta) = conj(xi(0)) eta'(0) - conj(xi'(0)) eta(0).

    Endpoint derivatives come from one-sided stencils of accuracy ``acc``
    (default 4); the grid must start at the boundary point.
    """
    _require_same_grid(xi, eta)
    w = _window_size(1, acc)
    if len(xi) < w:
        raise DegenerateGridError(
            f"boundary derivative at accuracy {acc} needs >= {w} points")
    nodes = xi.xs[:w]
    weights = fd_weights(nodes[0], nodes, 1)
    d_xi0 = np.dot(weights, xi.values[:w])
    d_eta0 = np.dot(weights, eta.values[:w])
    return complex(np.conj(xi.values[0]) * d_eta0 - np.conj(d_xi0) * eta.values[0])
