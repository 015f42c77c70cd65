"""Quaternion arithmetic and the Cartesian, polar and symplectic parametrizations.

Two layers live here. The array layer (``qmul``, ``qconj``, ``qdot``...)
works on float arrays whose last axis holds the four coordinates
``(x0, x1, x2, x3)`` and is what the curve code uses. The value layer is the
immutable :class:`Quaternion` together with the form types, for scalar work
and for the public operations ``mul``, ``conj``, ``to_polar`` and so on.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import QuaternionDomainError

TWO_PI = 2.0 * math.pi

DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-9


# ---------------------------------------------------------------------------
# array layer
# ---------------------------------------------------------------------------

def qmul(a, b):
    """Hamilton product of two arrays of quaternions (broadcasting on ``[..., 4]``).

    The terms are grouped in commuting pairs so that
    ``qconj(qmul(p, q)) == qmul(qconj(q), qconj(p))`` holds bit for bit.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    w0 = a0 * b0 - (a1 * b1 + a2 * b2 + a3 * b3)
    w1 = (a0 * b1 + a1 * b0) + (a2 * b3 - a3 * b2)
    w2 = (a0 * b2 + a2 * b0) + (a3 * b1 - a1 * b3)
    w3 = (a0 * b3 + a3 * b0) + (a1 * b2 - a2 * b1)
    return np.stack([w0, w1, w2, w3], axis=-1)


def qconj(a):
    a = np.asarray(a, dtype=float)
    out = -a
    out[..., 0] = a[..., 0]
    return out


def qnorm2(a):
    a = np.asarray(a, dtype=float)
    return a[..., 0] ** 2 + a[..., 1] ** 2 + a[..., 2] ** 2 + a[..., 3] ** 2


def qnorm(a):
    return np.sqrt(qnorm2(a))


def qdot(a, b):
    """Scalar product Re[a * conj(b)], i.e. the Euclidean product on R^4."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2] + a[..., 3] * b[..., 3]


def qinv(a):
    a = np.asarray(a, dtype=float)
    n2 = qnorm2(a)
    if np.any(n2 == 0.0):
        raise QuaternionDomainError("non-invertible: zero quaternion")
    return qconj(a) / n2[..., None]


def imag_vector(a):
    """Pure imaginary quaternions from 3-vectors ``[..., 3]``."""
    a = np.asarray(a, dtype=float)
    out = np.zeros(a.shape[:-1] + (4,))
    out[..., 1:] = a
    return out


BASIS = {
    "1": np.array([1.0, 0.0, 0.0, 0.0]),
    "i": np.array([0.0, 1.0, 0.0, 0.0]),
    "j": np.array([0.0, 0.0, 1.0, 0.0]),
    "k": np.array([0.0, 0.0, 0.0, 1.0]),
}
IMAGINARY_UNITS = (BASIS["i"], BASIS["j"], BASIS["k"])


# ---------------------------------------------------------------------------
# value layer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quaternion:
    """q = x0 + x1 i + x2 j + x3 k."""

    x0: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        a = np.asarray(a, dtype=float).reshape(4)
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def to_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2, self.x3])

    def __array__(self, dtype=None, copy=None):
        return self.to_array() if dtype is None else self.to_array().astype(dtype)

    def __iter__(self):
        return iter((self.x0, self.x1, self.x2, self.x3))

    @property
    def real(self) -> float:
        return self.x0

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.x0 + other.x0, self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 + other, self.x1, self.x2, self.x3)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __sub__(self, other):
        if isinstance(other, (Quaternion, int, float)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 * other, self.x1 * other, self.x2 * other, self.x3 * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 / other, self.x1 / other, self.x2 / other, self.x3 / other)
        if isinstance(other, Quaternion):
            return self * inverse(other)
        return NotImplemented

    def __abs__(self):
        return norm(self)

    def __repr__(self):
        return f"Quaternion({self.x0!r}, {self.x1!r}, {self.x2!r}, {self.x3!r})"


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)

QuaternionLike = Union[Quaternion, np.ndarray, tuple, list]


def as_quaternion(q: QuaternionLike) -> Quaternion:
    if isinstance(q, Quaternion):
        return q
    return Quaternion.from_array(q)


def mul(p: QuaternionLike, q: QuaternionLike) -> Quaternion:
    return Quaternion.from_array(qmul(np.asarray(p, dtype=float), np.asarray(q, dtype=float)))


def conj(q: QuaternionLike) -> Quaternion:
    q = as_quaternion(q)
    return Quaternion(q.x0, -q.x1, -q.x2, -q.x3)


def norm2(q: QuaternionLike) -> float:
    q = as_quaternion(q)
    return q.x0 * q.x0 + q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3


def norm(q: QuaternionLike) -> float:
    return math.sqrt(norm2(q))


def inverse(q: QuaternionLike) -> Quaternion:
    q = as_quaternion(q)
    n2 = norm2(q)
    if n2 == 0.0:
        raise QuaternionDomainError("non-invertible: zero quaternion")
    c = conj(q)
    return Quaternion(c.x0 / n2, c.x1 / n2, c.x2 / n2, c.x3 / n2)


def scalar_product(p: QuaternionLike, q: QuaternionLike) -> float:
    """<p, q> = Re[p conj(q)]."""
    return float(qdot(np.asarray(p, dtype=float), np.asarray(q, dtype=float)))


def is_orthogonal(p: QuaternionLike, q: QuaternionLike, tol: float = DEFAULT_RTOL) -> bool:
    """True when |<p, q>| <= tol |p| |q|.

    A zero argument is orthogonal (and parallel) to everything.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    return abs(scalar_product(p, q)) <= tol * norm(p) * norm(q)


def is_parallel(p: QuaternionLike, q: QuaternionLike, tol: float = DEFAULT_RTOL) -> bool:
    """True when p conj(q) is real up to tol |p| |q|, so that <p, q> = p conj(q)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    w = mul(p, conj(q))
    return math.sqrt(w.x1 ** 2 + w.x2 ** 2 + w.x3 ** 2) <= tol * norm(p) * norm(q)


def isclose(p: QuaternionLike, q: QuaternionLike, rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL) -> bool:
    d = norm(as_quaternion(p) - as_quaternion(q))
    return d <= atol + rtol * max(norm(p), norm(q))


# ---------------------------------------------------------------------------
# polar form  q = rho (cos theta + omega sin theta)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolarForm:
    """Cartesian-polar data with theta in [0, pi] and omega a unit pure imaginary.

    ``degenerate`` marks pure-real sources, whose omega is undefined and set
    to ``i``.
    """

    rho: float
    theta: float
    omega: Quaternion
    degenerate: bool = False


def _wrap_2pi(a: float) -> float:
    a = math.fmod(a, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI:
        a = 0.0
    return a


def to_polar(q: QuaternionLike) -> PolarForm:
    q = as_quaternion(q)
    rho = norm(q)
    if rho == 0.0:
        raise QuaternionDomainError("polar form undefined for the zero quaternion")
    vnorm = math.hypot(q.x1, q.x2, q.x3)
    theta = math.atan2(vnorm, q.x0)
    if vnorm == 0.0:
        return PolarForm(rho, theta, I, degenerate=True)
    # rescale first so subnormal components still give a unit omega
    m = max(abs(q.x1), abs(q.x2), abs(q.x3))
    v = (q.x1 / m, q.x2 / m, q.x3 / m)
    h = math.hypot(*v)
    omega = Quaternion(0.0, v[0] / h, v[1] / h, v[2] / h)
    return PolarForm(rho, theta, omega)


def from_polar(p: PolarForm) -> Quaternion:
    s = p.rho * math.sin(p.theta)
    w = p.omega
    return Quaternion(p.rho * math.cos(p.theta), s * w.x1, s * w.x2, s * w.x3)


def polar_unit_power(q: QuaternionLike, n: int) -> PolarForm:
    """Normalized polar form of omega**n * q, omega being q's own unit.

    omega commutes with q, so the product only advances the polar angle by
    n pi/2. An angle landing in (pi, 2pi) is folded back to 2pi - angle and
    the sign is absorbed by the unit, which then becomes -omega.
    """
    p = to_polar(q)
    n = int(n)
    if n == 0:
        return p
    alpha = _wrap_2pi(p.theta + n * (math.pi / 2.0))
    if alpha <= math.pi:
        return PolarForm(p.rho, alpha, p.omega, p.degenerate)
    return PolarForm(p.rho, TWO_PI - alpha, -p.omega, p.degenerate)


# ---------------------------------------------------------------------------
# symplectic forms  q = z0 + z1 j
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymplecticForm:
    z0: complex
    z1: complex


@dataclass(frozen=True)
class SymplecticPolarForm:
    """q = rho (cos(vartheta) e^{i phi} + sin(vartheta) e^{i psi} j).

    vartheta in [0, pi/2]; phi, psi in [0, 2pi). The phase of a vanishing
    component is 0.
    """

    rho: float
    vartheta: float
    phi: float
    psi: float


def to_symplectic(q: QuaternionLike) -> SymplecticForm:
    q = as_quaternion(q)
    return SymplecticForm(complex(q.x0, q.x1), complex(q.x2, q.x3))


def from_symplectic(s: SymplecticForm) -> Quaternion:
    z0, z1 = complex(s.z0), complex(s.z1)
    return Quaternion(z0.real, z0.imag, z1.real, z1.imag)


def _phase(z: complex) -> float:
    return 0.0 if z == 0 else _wrap_2pi(math.atan2(z.imag, z.real))


def to_symplectic_polar(q: QuaternionLike) -> SymplecticPolarForm:
    s = to_symplectic(q)
    a0, a1 = abs(s.z0), abs(s.z1)
    rho = math.hypot(a0, a1)
    if rho == 0.0:
        raise QuaternionDomainError("symplectic polar form undefined for the zero quaternion")
    return SymplecticPolarForm(rho, math.atan2(a1, a0), _phase(s.z0), _phase(s.z1))


def from_symplectic_polar(p: SymplecticPolarForm) -> Quaternion:
    z0 = p.rho * math.cos(p.vartheta) * cmath.exp(1j * p.phi)
    z1 = p.rho * math.sin(p.vartheta) * cmath.exp(1j * p.psi)
    return from_symplectic(SymplecticForm(z0, z1))


def symplectic_unit_power(q: QuaternionLike, n: int) -> SymplecticPolarForm:
    """Normalized symplectic-polar data of q * j**n.

    Right multiplication by j maps (z0, z1) to (-z1, z0), so odd powers swap
    the roles of the two components (vartheta -> pi/2 - vartheta) and every
    second power contributes a half-turn to both phases.
    """
    p = to_symplectic_polar(q)
    s = to_symplectic(q)
    r = int(n) % 4
    half = math.pi / 2.0
    if r == 0:
        return p
    if r == 1:
        vt, phi, psi = half - p.vartheta, p.psi - math.pi, p.phi
    elif r == 2:
        vt, phi, psi = p.vartheta, p.phi - math.pi, p.psi - math.pi
    else:
        vt, phi, psi = half - p.vartheta, p.psi, p.phi - math.pi
    # components that vanish keep the zero-phase convention
    if r % 2:
        z0_zero, z1_zero = s.z1 == 0, s.z0 == 0
    else:
        z0_zero, z1_zero = s.z0 == 0, s.z1 == 0
    phi = 0.0 if z0_zero else _wrap_2pi(phi)
    psi = 0.0 if z1_zero else _wrap_2pi(psi)
    if z0_zero:
        vt = half
    elif z1_zero:
        vt = 0.0
    return SymplecticPolarForm(p.rho, vt, phi, psi)
