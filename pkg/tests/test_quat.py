import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import as_complex_matrix, from_complex_matrix, nonzero_quaternions, quaternions, unit_imaginary
from qcurves.errors import QuaternionDomainError
from qcurves.quat import (
    BASIS,
    I,
    J,
    K,
    ONE,
    Quaternion,
    PolarForm,
    SymplecticForm,
    SymplecticPolarForm,
    conj,
    from_polar,
    from_symplectic,
    from_symplectic_polar,
    inverse,
    is_orthogonal,
    is_parallel,
    isclose,
    mul,
    norm,
    norm2,
    polar_unit_power,
    qconj,
    qdot,
    qinv,
    qmul,
    qnorm,
    qnorm2,
    scalar_product,
    symplectic_unit_power,
    to_polar,
    to_symplectic,
    to_symplectic_polar,
)

REL = 1e-12


def close(a, b, scale=1.0, tol=REL):
    return np.max(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))) <= tol * max(scale, 1e-300)


# ---------------------------------------------------------------------------
# product and basic operations
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "a, b, expected",
    [
        (I, J, K), (J, K, I), (K, I, J),
        (J, I, -K), (K, J, -I), (I, K, -J),
        (I, I, -ONE), (J, J, -ONE), (K, K, -ONE),
    ],
)
def test_unit_table(a, b, expected):
    assert mul(a, b) == expected


def test_ijk_is_minus_one():
    assert I * J * K == -ONE


def test_worked_product():
    p = Quaternion(1, 2, 3, 4)
    q = Quaternion(5, 6, 7, 8)
    assert p * q == Quaternion(-60, 12, 30, 24)
    assert q * p == Quaternion(-60, 20, 14, 32)


@given(quaternions, quaternions)
def test_product_matches_complex_matrix_oracle(p, q):
    expected = from_complex_matrix(as_complex_matrix(p) @ as_complex_matrix(q))
    assert close(qmul(p, q), expected, np.linalg.norm(p) * np.linalg.norm(q))


@given(quaternions, quaternions, quaternions)
def test_associative(p, q, r):
    scale = np.linalg.norm(p) * np.linalg.norm(q) * np.linalg.norm(r)
    assert close(qmul(qmul(p, q), r), qmul(p, qmul(q, r)), scale)


@given(quaternions, quaternions)
def test_conjugation_reverses_products_bitwise(p, q):
    assert np.array_equal(qconj(qmul(p, q)), qmul(qconj(q), qconj(p)))


@given(quaternions, quaternions)
def test_norm_is_multiplicative(p, q):
    n = qnorm(p) * qnorm(q)
    assert abs(qnorm(qmul(p, q)) - n) <= REL * max(n, 1e-300)


@given(quaternions)
def test_q_conj_q_is_norm_squared(q):
    w = qmul(q, qconj(q))
    assert close(w, [qnorm2(q), 0, 0, 0], qnorm2(q))


@given(nonzero_quaternions)
def test_inverse(q):
    assert close(qmul(q, qinv(q)), [1, 0, 0, 0], 1.0, 1e-11)
    assert isclose(mul(inverse(q), q), ONE, rtol=1e-11, atol=1e-11)


def test_inverse_of_zero_raises():
    with pytest.raises(QuaternionDomainError, match="non-invertible"):
        inverse(Quaternion())


def test_value_layer_helpers():
    q = Quaternion(1, -2, 3, -4)
    assert conj(q) == Quaternion(1, 2, -3, 4)
    assert norm2(q) == 30.0
    assert norm(q) == pytest.approx(math.sqrt(30))
    assert abs(q) == norm(q)
    assert q + 1 == Quaternion(2, -2, 3, -4)
    assert 2 * q == q * 2 == Quaternion(2, -4, 6, -8)
    assert q - q == Quaternion()
    assert (q / q).x0 == pytest.approx(1.0)
    assert Quaternion.from_array(q.to_array()) == q
    assert np.array_equal(np.asarray(q), [1, -2, 3, -4])


# ---------------------------------------------------------------------------
# scalar product, orthogonality, parallelism
# ---------------------------------------------------------------------------

@given(quaternions, quaternions)
def test_scalar_product_is_real_part_of_p_conj_q(p, q):
    w = qmul(p, qconj(q))
    scale = qnorm(p) * qnorm(q)
    assert abs(qdot(p, q) - w[0]) <= REL * max(scale, 1e-300)
    assert abs(scalar_product(p, q) - scalar_product(q, p)) <= REL * max(scale, 1e-300)


@given(nonzero_quaternions, st.sampled_from(["i", "j", "k"]))
def test_left_and_right_unit_multiples_are_orthogonal(q, e):
    u = BASIS[e]
    for w in (qmul(u, q), qmul(q, u)):
        assert abs(qdot(q, w)) <= REL * qnorm2(q)
        assert is_orthogonal(q, w, 1e-12)


@given(nonzero_quaternions, unit_imaginary)
def test_pure_imaginary_multiples_are_orthogonal(q, w):
    assert is_orthogonal(q, qmul(w, q), 1e-12)
    assert is_orthogonal(q, qmul(q, w), 1e-12)


def test_orthogonal_and_parallel_examples():
    assert is_orthogonal(I, J)
    assert not is_orthogonal(ONE + I, I)
    assert is_parallel(Quaternion(1, 2, 3, 4), Quaternion(-2, -4, -6, -8))
    assert not is_parallel(I, J)
    assert is_orthogonal(Quaternion(), I) and is_parallel(Quaternion(), I)
    with pytest.raises(ValueError):
        is_orthogonal(I, J, tol=0)


@given(nonzero_quaternions, st.floats(min_value=-10, max_value=10).filter(lambda x: abs(x) > 1e-3))
def test_real_multiples_are_parallel(q, a):
    assert is_parallel(q, a * q)
    # the scalar product of parallel quaternions equals p conj(q)
    w = qmul(q, qconj(a * q))
    assert abs(qdot(q, a * q) - w[0]) <= 1e-12 * abs(a) * qnorm2(q)


# ---------------------------------------------------------------------------
# polar form
# ---------------------------------------------------------------------------

@given(nonzero_quaternions)
def test_polar_round_trip(q):
    p = to_polar(q)
    assert 0.0 <= p.theta <= math.pi
    assert abs(norm(p.omega) - 1.0) <= 1e-12 and p.omega.x0 == 0.0
    assert close(np.asarray(from_polar(p)), q, qnorm(q))


def test_polar_examples():
    p = to_polar(Quaternion(1, 1, 0, 0))
    assert p.rho == pytest.approx(math.sqrt(2))
    assert p.theta == pytest.approx(math.pi / 4)
    assert p.omega == I
    assert to_polar(Quaternion(0, 0, 0, 2)).theta == pytest.approx(math.pi / 2)


@pytest.mark.parametrize("x0, theta", [(3.0, 0.0), (-2.0, math.pi)])
def test_pure_real_polar_is_flagged(x0, theta):
    p = to_polar(Quaternion(x0))
    assert p.degenerate and p.omega == I and p.theta == theta
    assert isclose(from_polar(p), Quaternion(x0), rtol=1e-12, atol=0.0)


def test_polar_of_zero_raises():
    with pytest.raises(QuaternionDomainError):
        to_polar(Quaternion())


def _omega_power(omega, n):
    w = np.array([1.0, 0, 0, 0])
    for _ in range(n):
        w = qmul(omega, w)
    return w


@given(nonzero_quaternions.filter(lambda q: np.linalg.norm(q[1:]) > 1e-6), st.integers(0, 8))
def test_polar_unit_power_matches_direct_product(q, n):
    omega = np.asarray(to_polar(q).omega)
    direct = qmul(_omega_power(omega, n), q)
    p = polar_unit_power(q, n)
    assert 0.0 <= p.theta <= math.pi
    assert close(np.asarray(from_polar(p)), direct, qnorm(q))


def test_polar_unit_power_folds_past_pi():
    # theta = 3pi/4, one quarter turn lands at 5pi/4 and folds to 3pi/4 with -omega
    q = Quaternion(-1, 1, 0, 0)
    p = polar_unit_power(q, 1)
    assert p.theta == pytest.approx(3 * math.pi / 4)
    assert p.omega == -I


# ---------------------------------------------------------------------------
# symplectic forms
# ---------------------------------------------------------------------------

def test_symplectic_decomposition():
    s = to_symplectic(Quaternion(1, 2, 3, 4))
    assert s == SymplecticForm(1 + 2j, 3 + 4j)
    assert from_symplectic(s) == Quaternion(1, 2, 3, 4)


@given(quaternions)
def test_symplectic_is_z0_plus_z1_j(q):
    s = to_symplectic(q)
    z0 = np.array([s.z0.real, s.z0.imag, 0, 0])
    z1 = np.array([s.z1.real, s.z1.imag, 0, 0])
    assert close(z0 + qmul(z1, BASIS["j"]), q, qnorm(q))


@given(nonzero_quaternions)
def test_symplectic_polar_round_trip(q):
    p = to_symplectic_polar(q)
    assert 0.0 <= p.vartheta <= math.pi / 2
    assert 0.0 <= p.phi < 2 * math.pi and 0.0 <= p.psi < 2 * math.pi
    assert close(np.asarray(from_symplectic_polar(p)), q, qnorm(q))


def test_symplectic_polar_zero_component_has_zero_phase():
    p = to_symplectic_polar(Quaternion(0, 0, 0, 5))
    assert p == SymplecticPolarForm(5.0, math.pi / 2, 0.0, math.pi / 2)
    with pytest.raises(QuaternionDomainError):
        to_symplectic_polar(Quaternion())


def _j_power(q, n):
    for _ in range(n):
        q = qmul(q, BASIS["j"])
    return q


@given(nonzero_quaternions, st.integers(0, 8))
def test_symplectic_unit_power_matches_direct_product(q, n):
    p = symplectic_unit_power(q, n)
    assert 0.0 <= p.vartheta <= math.pi / 2
    assert close(np.asarray(from_symplectic_polar(p)), _j_power(q, n), qnorm(q))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_symplectic_unit_power_table(n):
    q = from_symplectic(SymplecticForm(2 * cmath.exp(0.3j), 1 * cmath.exp(1.1j)))
    p = to_symplectic_polar(q)
    r = symplectic_unit_power(q, n)
    half = math.pi / 2
    expected = {
        1: (half - p.vartheta, p.psi - math.pi, p.phi),
        2: (p.vartheta, p.phi - math.pi, p.psi - math.pi),
        3: (half - p.vartheta, p.psi, p.phi - math.pi),
    }[n]
    assert r.vartheta == pytest.approx(expected[0])
    assert cmath.exp(1j * r.phi) == pytest.approx(cmath.exp(1j * expected[1]))
    assert cmath.exp(1j * r.psi) == pytest.approx(cmath.exp(1j * expected[2]))


def test_worked_examples():
    assert (ONE + I) * (ONE + J) == Quaternion(1, 1, 1, 1)
    assert conj(Quaternion(1, 1, 1, 1)) == Quaternion(1, -1, -1, -1)
    assert norm(Quaternion(1, 1, 1, 1)) == 2.0
    assert inverse(2 * I) == Quaternion(0, -0.5, 0, 0)
    assert scalar_product(I, J) == 0.0
    assert scalar_product(ONE + 2 * J, ONE + 2 * J) == 5.0
    q = Quaternion(0.3, -1.2, 2.0, 0.7)
    assert q * ONE == q


@given(quaternions)
def test_conjugation_is_an_involution_bitwise(q):
    assert np.array_equal(qconj(qconj(q)), q)


@pytest.mark.parametrize("theta, n, expected, flip", [
    (math.pi / 3, 2, 2 * math.pi / 3, True),
    (math.pi / 6, 1, 2 * math.pi / 3, False),
    (math.pi / 5, 0, math.pi / 5, False),
])
def test_polar_unit_power_examples(theta, n, expected, flip):
    omega = Quaternion(0, 0.6, 0, 0.8)
    q = from_polar(PolarForm(2.0, theta, omega))
    p = polar_unit_power(q, n)
    assert p.rho == pytest.approx(2.0) and p.theta == pytest.approx(expected)
    assert isclose(p.omega, -omega if flip else omega, rtol=1e-12, atol=1e-12)


def test_symplectic_examples():
    assert to_symplectic(ONE + K) == SymplecticForm(1 + 0j, 1j)
    assert to_symplectic_polar(J) == SymplecticPolarForm(1.0, math.pi / 2, 0.0, 0.0)
    q = from_symplectic(SymplecticForm(cmath.exp(0.7j), 0j))
    p = symplectic_unit_power(q, 1)
    assert p.vartheta == pytest.approx(math.pi / 2)
    assert isclose(from_symplectic_polar(p), mul(q, J), rtol=1e-12, atol=1e-12)
