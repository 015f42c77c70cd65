import math

import numpy as np
import pytest

from qcurves import curve as cv
from qcurves.curve import CurveSamples
from qcurves.errors import InvalidInputError, IrregularCurveError, QuaternionDomainError
from qcurves.quat import qnorm

TWO_PI = 2 * math.pi


def circle(n=1001, kappa=(0, 1, 0, 0), phi0=0.0, span=TWO_PI):
    return cv.builtin_constant_curvature(kappa, phi0, np.linspace(0, span, n))


def parabola(n=101):
    # q(t) = t + t^2 j
    return cv.sample_function(lambda t: np.stack([t, 0 * t, t ** 2, 0 * t], axis=-1), np.linspace(0, 1, n))


def square_speed(n=401):
    # q(t) = t^2 i on [1, 2], arc length s = t^2 - 1
    return cv.sample_function(lambda t: np.stack([0 * t, t ** 2, 0 * t, 0 * t], axis=-1), np.linspace(1, 2, n))


# ---------------------------------------------------------------------------
# samples and builders
# ---------------------------------------------------------------------------

def test_samples_validate_shape_and_grid():
    t = np.linspace(0, 1, 5)
    with pytest.raises(InvalidInputError):
        CurveSamples(t[:4], np.zeros((4, 4)))
    with pytest.raises(InvalidInputError):
        CurveSamples(t, np.zeros((5, 3)))
    with pytest.raises(InvalidInputError):
        CurveSamples(t, np.zeros((6, 4)))
    with pytest.raises(InvalidInputError):
        CurveSamples(t[::-1], np.zeros((5, 4)))
    bad = np.zeros((5, 4))
    bad[2, 1] = np.inf
    with pytest.raises(InvalidInputError):
        CurveSamples(t, bad)


def test_samples_are_immutable():
    c = circle(11)
    with pytest.raises(ValueError):
        c.q[0, 0] = 5.0
    with pytest.raises(Exception):
        c.t = np.zeros(11)
    assert len(c) == 11 and c.at(0).x0 == 1.0


def test_builtin_circle_values():
    c = cv.builtin_constant_curvature([0, 1, 0, 0], 0.0, np.array([0, 1, math.pi / 2, 2, 3]))
    assert np.allclose(c.q[0], [1, 0, 0, 0], atol=1e-15)
    assert np.allclose(c.q[2], [0, 1, 0, 0], atol=1e-15)


def test_builtin_constant_curvature_radius():
    c = circle(kappa=(0, 0.5, -1.0, 2.0), phi0=0.7)
    assert np.allclose(qnorm(c.q), 1 / math.sqrt(0.25 + 1 + 4), rtol=0, atol=1e-14)


@pytest.mark.parametrize("kappa", [(0, 0, 0, 0), (1, 1, 0, 0)])
def test_builtin_constant_curvature_domain(kappa):
    with pytest.raises(QuaternionDomainError):
        circle(11, kappa=kappa)


def test_builtin_symplectic_is_unit_speed_with_modulus():
    c = cv.builtin_symplectic(0.6 + 0.8j, 0.3, np.linspace(0, TWO_PI, 1001))
    assert np.allclose(qnorm(c.q), 1.0, atol=1e-14)
    assert cv.unit_speed_defect(c) < 1e-8
    with pytest.raises(QuaternionDomainError):
        cv.builtin_symplectic(0j, 0.0, np.linspace(0, 1, 5))


# ---------------------------------------------------------------------------
# derivatives and tangents
# ---------------------------------------------------------------------------

def test_constant_curve_has_zero_derivatives():
    c = CurveSamples(np.linspace(0, 1, 9), np.tile([1.0, 2.0, 3.0, 4.0], (9, 1)))
    d = cv.derivatives(c)
    assert np.allclose(d.d1, 0, atol=1e-12) and np.allclose(d.d2, 0, atol=1e-10)
    assert d.stencil_order == 2 and cv.derivatives(c, boundary_order=4).stencil_order == 4


def test_parabola_first_derivative():
    c = parabola()
    t = c.t
    expected = np.stack([np.ones_like(t), 0 * t, 2 * t, 0 * t], axis=-1)
    assert np.max(np.abs(cv.derivatives(c).d1 - expected)) < 1e-8


def test_circle_speed():
    # end stencils are second order, so the bound is for interior nodes
    v = cv.speed(circle())
    assert np.max(np.abs(v - 1.0)[cv.interior(v.size)]) < 1e-6
    assert np.max(np.abs(cv.speed(circle()) - 1.0)) < 1e-4


def test_derivatives_converge_at_fourth_order_in_the_interior():
    errs = []
    for n in (101, 201, 401, 801):
        c = circle(n)
        u = c.t
        exact = np.stack([-np.sin(u), np.cos(u), 0 * u, 0 * u], axis=-1)
        errs.append(np.max(qnorm(cv.derivatives(c).d1 - exact)[2:-2]))
    order = np.log2(np.asarray(errs[:-1]) / np.asarray(errs[1:]))
    assert np.all(order >= 3.5)


def test_derivative_consistency_under_reparametrization():
    # d/ds of the resampled curve against the analytic unit tangent at the source parameters
    def f(t):
        return np.stack([2 * np.cos(t), np.sin(t), 0.3 * t, 0 * t], axis=-1)

    def df(t):
        return np.stack([-2 * np.sin(t), np.cos(t), 0.3 + 0 * t, 0 * t], axis=-1)

    errs = []
    for n in (101, 201, 401, 801):
        r, t_of_s = cv.arc_length_reparametrization(cv.sample_function(f, np.linspace(0, 3, n)))
        T = df(t_of_s)
        T /= qnorm(T)[:, None]
        errs.append(np.max(qnorm(cv.derivatives(r).d1 - T)[4:-4]))
    order = np.log2(np.asarray(errs[:-1]) / np.asarray(errs[1:]))
    assert np.all(order >= 3.5)


def test_tangent_of_circle_and_line():
    T = cv.tangent(circle())
    assert np.allclose(T[0], [0, 1, 0, 0], atol=1e-6)
    assert np.allclose(qnorm(T), 1.0, atol=1e-9)
    line = cv.straight_line(np.linspace(0, 1, 11), [0, 0, 0, 0], [1 / math.sqrt(2), 1 / math.sqrt(2), 0, 0])
    assert np.allclose(cv.tangent(line), [1 / math.sqrt(2), 1 / math.sqrt(2), 0, 0], atol=1e-12)


def test_tangent_is_orthogonal_to_its_derivative_at_constant_speed():
    c = cv.builtin_symplectic(1.0, 0.0, np.linspace(0, 3, 601))
    T = cv.tangent(c)
    dT = cv.numerics.derivative(T, c.t, 1)
    assert np.max(np.abs(np.sum(T * dT, axis=1))[2:-2]) < 1e-8


def test_irregular_curve_is_reported_with_location():
    t = np.linspace(-1, 1, 21)
    c = cv.sample_function(lambda t: np.stack([t ** 3, t ** 3, 0 * t, 0 * t], axis=-1), t)
    assert not cv.is_regular(c)
    with pytest.raises(IrregularCurveError, match=r"irregular curve at t=") as info:
        cv.tangent(c)
    assert abs(info.value.t) < 1e-12


# ---------------------------------------------------------------------------
# arc length
# ---------------------------------------------------------------------------

def test_circle_length():
    assert abs(cv.arc_length(circle(), 0.0, TWO_PI) - TWO_PI) < 1e-6


def test_line_segment_length_and_degenerate_interval():
    line = cv.straight_line(np.linspace(0, 3, 31), [0, 0, 0, 0], [1, 0, 0, 0])
    assert cv.arc_length(line, 0, 3) == pytest.approx(3.0, abs=1e-12)
    assert cv.arc_length(line, 1.3, 1.3) == 0.0


def test_arc_length_out_of_range():
    with pytest.raises(InvalidInputError):
        cv.arc_length(circle(11), -0.1, 1.0)


@pytest.mark.parametrize("a, b, c", [(0.0, 1.234, 4.0), (0.3, 2.0, 6.2), (1.0, 1.0001, 1.5)])
def test_arc_length_is_additive(a, b, c):
    curve = cv.sample_function(
        lambda t: np.stack([2 * np.cos(t), np.sin(t), 0.3 * t, 0 * t], axis=-1), np.linspace(0, TWO_PI, 301)
    )
    whole = cv.arc_length(curve, a, c)
    parts = cv.arc_length(curve, a, b) + cv.arc_length(curve, b, c)
    assert abs(whole - parts) <= 1e-10 * whole


def test_arc_length_convergence():
    # ellipse perimeter from the complete elliptic integral
    from scipy.special import ellipe

    exact = 4 * 2 * ellipe(1 - 0.25)
    errs = []
    for n in (41, 81, 161, 321):
        c = cv.sample_function(lambda t: np.stack([2 * np.cos(t), np.sin(t), 0 * t, 0 * t], axis=-1), np.linspace(0, TWO_PI, n))
        errs.append(abs(cv.arc_length(c, 0, TWO_PI) - exact))
    ratios = np.asarray(errs[:-1]) / np.asarray(errs[1:])
    assert np.all(ratios >= 8)


def test_cumulative_arc_length_of_unit_speed_curve_is_parameter():
    c = circle()
    assert np.allclose(cv.cumulative_arc_length(c), c.t, atol=1e-9)


# ---------------------------------------------------------------------------
# reparametrization
# ---------------------------------------------------------------------------

def test_unit_speed_circle_is_a_fixed_point():
    c = circle()
    r = cv.reparametrize_by_arc_length(c)
    assert np.max(qnorm(r.q - c.q)) < 1e-6
    assert np.max(np.abs(r.t - c.t)) < 1e-6


@pytest.mark.parametrize("order", [3, 5])
def test_square_speed_reparametrization_is_unit_speed(order):
    r = cv.reparametrize_by_arc_length(square_speed(), order=order)
    assert cv.unit_speed_defect(r) <= 1e-4
    # analytic: q(s) = (s + 1) i
    assert np.allclose(r.q[:, 1], r.t + 1, atol=1e-8)


def test_reparametrization_preserves_length():
    c = cv.sample_function(
        lambda t: np.stack([2 * np.cos(t), np.sin(t), 0.3 * t, 0 * t], axis=-1), np.linspace(0, TWO_PI, 801)
    )
    L_in = cv.arc_length(c, c.t[0], c.t[-1])
    r = cv.reparametrize_by_arc_length(c)
    L_out = cv.arc_length(r, r.t[0], r.t[-1])
    assert abs(L_out - L_in) <= 1e-6 * L_in
    assert abs(r.t[-1] - L_in) <= 1e-12 * L_in


def test_reparametrization_returns_source_parameters():
    c = square_speed()
    r, t_of_s = cv.arc_length_reparametrization(c, nodes=201)
    assert r.t.size == 201
    assert np.allclose(t_of_s, np.sqrt(r.t + 1), atol=1e-9)
    assert t_of_s[0] == c.t[0] and t_of_s[-1] == c.t[-1]


def test_reparametrization_rejects_irregular_curves_and_bad_order():
    t = np.linspace(-1, 1, 21)
    c = cv.sample_function(lambda t: np.stack([t ** 3, 0 * t, 0 * t, 0 * t], axis=-1), t)
    with pytest.raises(IrregularCurveError):
        cv.reparametrize_by_arc_length(c)
    with pytest.raises(InvalidInputError):
        cv.arc_length_reparametrization(circle(11), order=4)
