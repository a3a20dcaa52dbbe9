import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saext.core import GridFunction, Interval, derivative_values, inner_product, norm
from saext.errors import (
    IndeterminateError,
    InvalidIndexError,
    NoRootError,
    PreconditionError,
    TooCoarseError,
    UnsupportedOperatorError,
)
from saext.spectral import (
    bound_state,
    bound_state_shooting,
    dirichlet_fd_eigenvalues,
    discretized_momentum_eigpair,
    discretized_momentum_eigs,
    discretized_momentum_matrix,
    halfline_robin_spectrum,
    momentum_spectrum,
    reflection_coefficient,
    reflection_phase,
    scattering_state,
    well_spectrum,
)

BOX = Interval.finite(0.0, 1.0)


# ---------------------------------------------------------------------------
# momentum spectrum
# ---------------------------------------------------------------------------

def test_momentum_levels_unit_box():
    res = momentum_spectrum(0.0, BOX, range(-2, 3))
    values = [lv.value for lv in res.discrete]
    assert values == pytest.approx(
        [-4 * math.pi, -2 * math.pi, 0.0, 2 * math.pi, 4 * math.pi]
    )
    assert values[3] == pytest.approx(2 * math.pi, abs=0.0)


def test_momentum_antiperiodic_lowest_level():
    res = momentum_spectrum(math.pi, BOX, [0])
    assert res.discrete[0].value == pytest.approx(math.pi, abs=0.0)


def test_momentum_rescaled_box_by_residual():
    # length-2 box, n=1: p should be pi; verify against the ODE itself
    res = momentum_spectrum(0.0, Interval.finite(0.0, 2.0), [1], grid_n=4001)
    level = res.discrete[0]
    assert level.value == pytest.approx(math.pi)
    dpsi = derivative_values(level.eigenfunction.xs, level.eigenfunction.values, 1, acc=4)
    resid = -1j * dpsi - level.value * level.eigenfunction.values
    assert np.max(np.abs(resid[3:-3])) < 1e-8


def test_momentum_twist_across_box():
    for theta in (0.0, math.pi / 3, math.pi, 5.0):
        res = momentum_spectrum(theta, BOX, range(-3, 4))
        for level in res.discrete:
            f = level.eigenfunction
            assert abs(f.values[-1] - np.exp(1j * theta) * f.values[0]) < 1e-12


def test_momentum_eigenfunctions_orthonormal():
    res = momentum_spectrum(0.7, BOX, range(-2, 3))
    fns = [lv.eigenfunction for lv in res.discrete]
    for i, f in enumerate(fns):
        for j, g in enumerate(fns):
            target = 1.0 if i == j else 0.0
            assert inner_product(f, g) == pytest.approx(target, abs=1e-10)


def test_momentum_values_increase_with_n():
    res = momentum_spectrum(1.3, Interval.finite(-1.0, 3.0), range(-5, 6))
    values = [lv.value for lv in res.discrete]
    assert all(u < v for u, v in zip(values, values[1:]))


def test_momentum_shift_covariance_one_ulp():
    for theta in (0.0, 0.7, 2.0):
        shifted = momentum_spectrum(theta + math.tau, BOX, range(-3, 3))
        base = momentum_spectrum(theta, BOX, range(-2, 4))
        for ls, lb in zip(shifted.discrete, base.discrete):
            assert ls.n + 1 == lb.n
            assert abs(ls.value - lb.value) <= 1e-15 * max(1.0, abs(lb.value))


def test_momentum_rejects_unbounded_intervals():
    with pytest.raises(UnsupportedOperatorError):
        momentum_spectrum(0.0, Interval.half_line(0.0), [0])
    with pytest.raises(UnsupportedOperatorError):
        momentum_spectrum(0.0, Interval.full_line(), [0])


# ---------------------------------------------------------------------------
# square well
# ---------------------------------------------------------------------------

def test_well_ground_state_unit_width():
    res = well_spectrum(1.0, [1])
    level = res.discrete[0]
    assert level.value == pytest.approx(math.pi**2, rel=1e-15)
    mid = level.eigenfunction.values[1000]  # x = 1/2
    assert mid == pytest.approx(math.sqrt(2.0), rel=1e-14)


def test_well_second_level_width_pi_against_fd_oracle():
    assert well_spectrum(math.pi, [2]).discrete[0].value == pytest.approx(4.0, rel=1e-14)
    # Richardson-extrapolated three-point Laplacian agrees
    coarse = dirichlet_fd_eigenvalues(math.pi, 400, 2)[1]
    fine = dirichlet_fd_eigenvalues(math.pi, 800, 2)[1]
    extrapolated = (4.0 * fine - coarse) / 3.0
    assert extrapolated == pytest.approx(4.0, abs=1e-8)


def test_well_fd_convergence_is_second_order():
    targets = [(n * math.pi / 2.0) ** 2 for n in (1, 2, 3)]
    err_h = [abs(v - t) for v, t in zip(dirichlet_fd_eigenvalues(2.0, 200, 3), targets)]
    err_h2 = [abs(v - t) for v, t in zip(dirichlet_fd_eigenvalues(2.0, 400, 3), targets)]
    for eh, eh2 in zip(err_h, err_h2):
        order = math.log2(eh / eh2)
        assert order == pytest.approx(2.0, abs=0.2)


def test_well_eigenfunctions_orthonormal():
    res = well_spectrum(1.0, [1, 2, 3])
    fns = [lv.eigenfunction for lv in res.discrete]
    for i, f in enumerate(fns):
        for j, g in enumerate(fns):
            target = 1.0 if i == j else 0.0
            assert inner_product(f, g) == pytest.approx(target, abs=1e-10)


def test_well_rejects_bad_labels_and_width():
    with pytest.raises(InvalidIndexError):
        well_spectrum(1.0, [0])
    with pytest.raises(InvalidIndexError):
        well_spectrum(1.0, [-2])
    with pytest.raises(PreconditionError):
        well_spectrum(-1.0, [1])


def test_well_eigenfunction_ode_residual():
    res = well_spectrum(1.5, [1, 2, 4], grid_n=10_001)
    for level in res.discrete:
        f = level.eigenfunction
        d2 = derivative_values(f.xs, f.values, 2, acc=4)
        resid = -d2 - level.value * f.values
        assert np.max(np.abs(resid[4:-4])) < 1e-4


# ---------------------------------------------------------------------------
# bound state
# ---------------------------------------------------------------------------

def test_bound_state_alpha_minus_one():
    state = bound_state(-1.0)
    assert state is not None
    assert state.energy == -1.0
    assert state.psi.values[0] == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert norm(state.psi) == pytest.approx(1.0, abs=1e-8)


def test_bound_state_energies():
    assert bound_state(-2.0).energy == -4.0
    assert bound_state(-0.25).energy == pytest.approx(-0.0625)


def test_bound_state_absent_for_repulsive_boundary():
    assert bound_state(0.5) is None
    assert bound_state(0.0) is None


def test_bound_state_robin_residual():
    for alpha in (-0.5, -1.0, -3.0):
        state = bound_state(alpha)
        d = derivative_values(state.psi.xs, state.psi.values, 1, acc=4)
        assert abs(d[0] / state.psi.values[0] - alpha) < 1e-7


@given(st.floats(min_value=-100.0, max_value=100.0, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_bound_state_threshold_property(alpha):
    state = bound_state(alpha)
    assert (state is not None) == (alpha < 0.0)


def test_shooting_recovers_closed_form():
    for alpha in (-0.5, -1.0, -2.0):
        e = bound_state_shooting(alpha, (-4.0 * alpha**2, -0.25 * alpha**2))
        assert abs(e + alpha**2) <= 1e-6


def test_shooting_custom_cutoff():
    e = bound_state_shooting(-3.0, (-36.0, -2.25), x_max=20.0)
    assert abs(e + 9.0) <= 1e-5


def test_shooting_rejects_rootless_bracket():
    with pytest.raises(NoRootError):
        bound_state_shooting(-1.0, (-9.0, -4.0))


def test_shooting_preconditions():
    with pytest.raises(PreconditionError):
        bound_state_shooting(1.0, (-4.0, -0.25))
    with pytest.raises(PreconditionError):
        bound_state_shooting(-1.0, (-4.0, 1.0))


# ---------------------------------------------------------------------------
# scattering
# ---------------------------------------------------------------------------

def test_reflection_neumann_is_exactly_one():
    for k in (0.1, 1.0, 17.5):
        assert reflection_coefficient(k, 0.0) == 1.0 + 0.0j


def test_reflection_dirichlet_is_exactly_minus_one():
    assert reflection_coefficient(2.0, math.inf) == -1.0 + 0.0j


def test_reflection_frozen_value():
    # (i - 1)/(i + 1) = i, by direct complex division
    assert reflection_coefficient(1.0, -1.0) == pytest.approx(1j, abs=1e-12)
    assert reflection_phase(1.0, -1.0) == pytest.approx(1.5 * math.pi, abs=1e-12)


def test_reflection_indeterminate_corner():
    with pytest.raises(IndeterminateError):
        reflection_coefficient(0.0, 0.0)


@given(
    st.floats(min_value=1e-6, max_value=100.0),
    st.floats(min_value=-100.0, max_value=100.0),
)
@settings(max_examples=300, deadline=None)
def test_reflection_unitarity_property(k, alpha):
    assert abs(abs(reflection_coefficient(k, alpha)) - 1.0) <= 1e-14


def test_scattering_state_neumann_is_cosine():
    xs = np.linspace(0.0, 10.0, 2001)
    psi = scattering_state(1.0, 0.0, xs)
    assert np.max(np.abs(psi.values - 2.0 * np.cos(xs))) < 1e-12


def test_scattering_state_dirichlet_is_sine():
    xs = np.linspace(0.0, 10.0, 2001)
    psi = scattering_state(1.0, math.inf, xs)
    assert np.max(np.abs(psi.values + 2j * np.sin(xs))) < 1e-12


def test_scattering_state_satisfies_robin_and_ode():
    xs = np.linspace(0.0, 10.0, 10_001)
    k, alpha = 2.0, -1.0
    psi = scattering_state(k, alpha, xs)
    d = derivative_values(psi.xs, psi.values, 1, acc=4)
    assert abs(d[0] - alpha * psi.values[0]) < 1e-10
    d2 = derivative_values(psi.xs, psi.values, 2, acc=4)
    assert np.max(np.abs(-d2[4:-4] - k * k * psi.values[4:-4])) < 1e-4


def test_halfline_spectrum_bundles_both_parts():
    res = halfline_robin_spectrum(-1.0)
    assert len(res.discrete) == 1
    assert res.discrete[0].value == -1.0
    assert res.continuous.threshold == 0.0
    assert res.continuous.reflection_phase(1.0) == pytest.approx(1.5 * math.pi)
    assert halfline_robin_spectrum(2.0).discrete == ()


# ---------------------------------------------------------------------------
# discretized cross-check
# ---------------------------------------------------------------------------

def test_twisted_matrix_matches_closed_form_spectrum():
    n, theta = 64, 0.9
    computed = discretized_momentum_eigs(theta, n)
    expected = sorted(
        (discretized_momentum_eigpair(theta, n, m)[0] for m in range(n)),
        key=lambda z: (abs(z), z.real, z.imag),
    )
    assert np.max(np.abs(np.array(computed) - np.array(expected))) < 1e-9


def test_twisted_eigpair_is_exact_for_the_matrix():
    n, theta = 128, math.pi / 3
    mat = discretized_momentum_matrix(theta, n)
    lam, vec = discretized_momentum_eigpair(theta, n, 2)
    assert np.max(np.abs(mat @ vec - lam * vec)) < 1e-10 * n


def test_twisted_low_mode_tracks_continuum():
    # the mode nearest 2*pi converges at first order
    target = 2 * math.pi
    errors = []
    for n in (64, 128):
        vals = np.array(discretized_momentum_eigs(0.0, n))
        nearest = vals[np.argmin(np.abs(vals - target))]
        errors.append(abs(nearest - target))
    assert errors[0] / errors[1] == pytest.approx(2.0, abs=0.3)


def test_twisted_large_n_uses_arnoldi_and_matches():
    vals = np.array(discretized_momentum_eigs(math.pi / 3, 2048, count=8))
    target = math.pi / 3
    nearest = vals[np.argmin(np.abs(vals - target))]
    assert abs(nearest - target) / target < 1e-2
    again = np.array(discretized_momentum_eigs(math.pi / 3, 2048, count=8))
    assert np.array_equal(vals, again)


def test_twisted_rejects_coarse_rings():
    with pytest.raises(TooCoarseError):
        discretized_momentum_eigs(0.0, 63)
    with pytest.raises(TooCoarseError):
        discretized_momentum_matrix(0.0, 32)


def test_spectrum_result_json_shape():
    res = momentum_spectrum(0.0, BOX, [0, 1])
    out = res.to_json_dict()
    assert out["continuous"] is None
    assert out["discrete"][1] == {"n": 1, "value": pytest.approx(2 * math.pi)}
    out2 = halfline_robin_spectrum(-2.0).to_json_dict()
    assert out2["continuous"] == {"threshold": 0.0}
    assert out2["discrete"] == [{"n": 0, "value": -4.0}]
