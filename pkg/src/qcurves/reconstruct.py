"""Curves from curvature data.

Three routes: the closed form for a curvature of fixed direction omega,
a fourth-order Runge-Kutta integration of q'' = kappa(t) q' for arbitrary
kappa(t), and the general solution of the symplectic equation q'' = q' c j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from . import curve as cv
from . import numerics
from .curve import CurveSamples
from .errors import InvalidInputError
from .frenet import CurvatureProfile, curvature_cartesian
from .quat import QuaternionLike, imag_vector, qdot, qmul, qnorm

UNIT_TOL = 1e-9


def _quat(x, name) -> np.ndarray:
    a = np.asarray(x, dtype=float).reshape(-1)
    if a.size != 4 or not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{name} must be four finite numbers")
    return a


@dataclass(frozen=True)
class ReconstructionSpec:
    """Data fixing a curve with curvature |kappa(t)| omega, omega constant.

    ``V0`` is the unit initial velocity. When it lies in span{1, omega} it
    equals cos(phi0) + omega sin(phi0), see :meth:`from_phase`.
    """

    t: np.ndarray
    kappa_mag: np.ndarray
    omega: np.ndarray
    P0: np.ndarray
    V0: np.ndarray

    def __post_init__(self):
        t = numerics.check_grid(self.t, min_nodes=cv.MIN_NODES)
        k = np.broadcast_to(np.asarray(self.kappa_mag, dtype=float), t.shape).copy()
        if not np.all(np.isfinite(k)) or np.any(k < 0):
            raise InvalidInputError("kappa_mag must be finite and nonnegative")
        omega = _quat(self.omega, "omega")
        if omega[0] != 0.0 or abs(qnorm(omega) - 1.0) > UNIT_TOL:
            raise InvalidInputError("omega must be a unit pure imaginary quaternion")
        V0 = _quat(self.V0, "V0")
        if abs(qnorm(V0) - 1.0) > UNIT_TOL:
            raise InvalidInputError(f"|V0| must be 1 (got {float(qnorm(V0))!r})")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "kappa_mag", k)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "P0", _quat(self.P0, "P0"))
        object.__setattr__(self, "V0", V0)

    @classmethod
    def from_phase(cls, t, kappa_mag, omega: QuaternionLike, phi0: float, P0: QuaternionLike):
        w = np.asarray(omega, dtype=float)
        V0 = math.cos(phi0) * np.array([1.0, 0, 0, 0]) + math.sin(phi0) * w
        return cls(t, kappa_mag, w, P0, V0)

    @property
    def phi0(self) -> Optional[float]:
        """Phase of V0 in the (1, omega) plane, None if V0 leaves that plane."""
        a, b = self.V0[0], qdot(self.V0, self.omega)
        if abs(math.hypot(a, b) - 1.0) > 1e-9:
            return None
        return math.atan2(b, a)

    @property
    def profile(self) -> CurvatureProfile:
        return CurvatureProfile.from_components(self.t, self.kappa_mag[:, None] * self.omega[None, 1:])


def reconstruct_closed_form(spec: ReconstructionSpec) -> CurveSamples:
    """q(t) = P0 + (X(t) + omega Y(t)) V0 with nested cumulative quadrature.

    theta(t) = int |kappa|, X = int cos(theta), Y = int sin(theta), all from t0.
    Then q' = (cos theta + omega sin theta) V0 is unit, q'(t0) = V0 and
    q'' = |kappa| omega q'.
    """
    t = spec.t
    theta = numerics.cumulative_simpson(spec.kappa_mag, t)
    X = numerics.cumulative_simpson(np.cos(theta), t)
    Y = numerics.cumulative_simpson(np.sin(theta), t)
    planar = X[:, None] * np.array([1.0, 0, 0, 0]) + Y[:, None] * spec.omega
    q = spec.P0 + qmul(planar, spec.V0)
    return CurveSamples(t, q, {"reconstructed": "closed-form"})


KappaSource = Union[CurvatureProfile, Callable[[float], np.ndarray]]


def _left_matrices(g):
    """Matrices of v -> g v for each row of g, shape (N, 4, 4)."""
    basis = np.eye(4)
    return np.stack([qmul(g, basis[m]) for m in range(4)], axis=-1)


def _frenet_rk4(t, K_node, K_mid, P0, V0):
    """Classic RK4 for (q, v)' = (v, K v) with K given at nodes and midpoints.

    The system is linear, so the stage matrices are evaluated up front; the
    scheme is the one of :func:`numerics.rk4`.
    """
    out = np.empty((t.size, 4))
    q, v = P0.copy(), V0.copy()
    out[0] = q
    h_all = np.diff(t)
    for n in range(t.size - 1):
        h = h_all[n]
        a1 = K_node[n] @ v
        v2 = v + 0.5 * h * a1
        a2 = K_mid[n] @ v2
        v3 = v + 0.5 * h * a2
        a3 = K_mid[n] @ v3
        v4 = v + h * a3
        a4 = K_node[n + 1] @ v4
        q = q + (h / 6.0) * (v + 2.0 * v2 + 2.0 * v3 + v4)
        v = v + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        out[n + 1] = q
    return out


def reconstruct_ode(kappa: KappaSource, P0: QuaternionLike, V0: QuaternionLike, t=None) -> CurveSamples:
    """Integrate q'' = kappa(t) q' with classic RK4 on the grid.

    ``kappa`` is a :class:`CurvatureProfile` (linearly interpolated between
    its nodes, which are also the steps) or a callable returning (k1, k2, k3)
    for analytic curvatures; a callable needs an explicit grid ``t``.
    """
    P0 = _quat(P0, "P0")
    V0 = _quat(V0, "V0")
    if abs(qnorm(V0) - 1.0) > UNIT_TOL:
        raise InvalidInputError(f"|V0| must be 1 (got {float(qnorm(V0))!r})")
    if isinstance(kappa, CurvatureProfile):
        if t is not None and (len(t) != kappa.t.size or np.any(np.asarray(t) != kappa.t)):
            raise InvalidInputError("grid mismatch: the profile fixes the integration grid")
        grid = numerics.check_grid(kappa.t)
        K_node = _left_matrices(imag_vector(kappa.components))
        K_mid = 0.5 * (K_node[:-1] + K_node[1:])
    else:
        if t is None:
            raise InvalidInputError("an analytic curvature needs an integration grid")
        grid = numerics.check_grid(t)
        mid = 0.5 * (grid[:-1] + grid[1:])

        def mats(ts):
            return _left_matrices(imag_vector(np.array([kappa(s) for s in ts], dtype=float).reshape(-1, 3)))

        K_node, K_mid = mats(grid), mats(mid)
    return CurveSamples(grid, _frenet_rk4(grid, K_node, K_mid, P0, V0), {"reconstructed": "rk4"})


def reconstruct_symplectic(t, c_mag, phi0: float, P0: complex, Q0: complex) -> CurveSamples:
    """Curve with complex curvature |c(t)| e^{i(phi0 + pi/2)}.

    z0' = e^{i int |c|} / sqrt(2) and z1' = z0' e^{i phi0}, integrated from
    z0(t0) = P0, z1(t0) = Q0. The 1/sqrt(2) makes the curve unit speed, so
    the curvature read back in arc-length gauge is the one prescribed.
    """
    t = numerics.check_grid(t, min_nodes=cv.MIN_NODES)
    cm = np.broadcast_to(np.asarray(c_mag, dtype=float), t.shape)
    if not np.all(np.isfinite(cm)) or np.any(cm < 0):
        raise InvalidInputError("|c| must be finite and nonnegative")
    for name, z in (("P0", P0), ("Q0", Q0), ("phi0", phi0)):
        if not np.isfinite(complex(z)):
            raise InvalidInputError(f"{name} must be finite")
    theta = numerics.cumulative_simpson(cm, t)
    dz0 = np.exp(1j * theta) / math.sqrt(2.0)
    Z = numerics.cumulative_simpson(np.stack([dz0.real, dz0.imag], axis=-1), t)
    Z = Z[:, 0] + 1j * Z[:, 1]
    z0 = complex(P0) + Z
    z1 = complex(Q0) + np.exp(1j * phi0) * Z
    q = np.stack([z0.real, z0.imag, z1.real, z1.imag], axis=-1)
    return CurveSamples(t, q, {"reconstructed": "symplectic", "phi0": float(phi0)})


def expected_symplectic_curvature(c_mag, phi0: float):
    return np.asarray(c_mag, dtype=float) * np.exp(1j * (phi0 + math.pi / 2.0))


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UniquenessReport:
    method: str
    max_deviation: float


def uniqueness_check(spec: ReconstructionSpec, perturbation: str = "ode", kappa_fn=None) -> UniquenessReport:
    """Compare two independent reconstructions of the same data.

    ``perturbation="ode"`` pits the closed form against RK4 on the same grid;
    ``"step"`` compares RK4 on the grid with RK4 on the grid refined twice,
    which needs the analytic ``kappa_fn(t) -> |kappa|``.
    """
    base = reconstruct_closed_form(spec)
    if perturbation == "ode":
        other = reconstruct_ode(spec.profile, spec.P0, spec.V0)
        dev = qnorm(base.q - other.q)
    elif perturbation == "step":
        if kappa_fn is None:
            raise InvalidInputError("step refinement needs an analytic |kappa|")
        coarse = reconstruct_ode(lambda s: kappa_fn(s) * spec.omega[1:], spec.P0, spec.V0, t=spec.t)
        fine_t = np.empty(2 * spec.t.size - 1)
        fine_t[0::2] = spec.t
        fine_t[1::2] = 0.5 * (spec.t[:-1] + spec.t[1:])
        fine = reconstruct_ode(lambda s: kappa_fn(s) * spec.omega[1:], spec.P0, spec.V0, t=fine_t)
        dev = qnorm(coarse.q - fine.q[0::2])
    else:
        raise ValueError(f"unknown perturbation {perturbation!r}")
    return UniquenessReport(perturbation, float(np.max(dev)))


def plane_residual(c: CurveSamples, spec: ReconstructionSpec) -> float:
    """Largest distance of q - P0 from the plane span{V0, omega V0}."""
    d = c.q - spec.P0
    e1 = spec.V0
    e2 = qmul(spec.omega, spec.V0)
    rest = d - qdot(d, e1)[:, None] * e1 - qdot(d, e2)[:, None] * e2
    return float(np.max(qnorm(rest)))


def align_initial_conditions(reference: np.ndarray, G: np.ndarray):
    """Least-squares (P, V) with reference ~ P + G V.

    Every solution of q'' = kappa q' has that form, G being the solution with
    P0 = 0 and V0 = 1. Returns (P, V, aligned curve values).
    """
    n = G.shape[0]
    A = np.concatenate([np.broadcast_to(np.eye(4), (n, 4, 4)), _left_matrices(G)], axis=-1).reshape(4 * n, 8)
    sol = np.linalg.lstsq(A, np.asarray(reference, dtype=float).reshape(-1), rcond=None)[0]
    P, V = sol[:4], sol[4:]
    return P, V, P + qmul(G, V)


@dataclass(frozen=True)
class RoundTripReport:
    method: str
    max_deviation: float
    profile: CurvatureProfile


def reconstruction_roundtrip(c: CurveSamples, method: str = "ode", margin: int = 4) -> RoundTripReport:
    """Extract the curvature of ``c`` and rebuild the curve from it.

    ``c`` is reparametrized by arc length first. The rebuilt curve is aligned
    to ``c`` through its initial data (least squares) and the largest
    deviation over interior nodes is reported. ``method="closed"`` requires a
    curvature of fixed direction.
    """
    r = cv.reparametrize_by_arc_length(c)
    prof = curvature_cartesian(r)
    one = np.array([1.0, 0, 0, 0])
    if method == "ode":
        G = reconstruct_ode(prof, np.zeros(4), one).q
    elif method == "closed":
        k = prof.components
        mean = k.mean(axis=0)
        if not np.any(mean):
            omega = np.array([0.0, 1.0, 0.0, 0.0])
        else:
            omega = imag_vector(mean / np.linalg.norm(mean))
        signed = k @ omega[1:]
        if np.max(prof.kappa_mag - np.abs(signed)) > 1e-6 * max(1.0, float(prof.kappa_mag.max())) or np.any(signed < -1e-9):
            raise InvalidInputError("curvature direction is not constant; use the ODE route")
        spec = ReconstructionSpec(r.t, np.maximum(signed, 0.0), omega, np.zeros(4), one)
        G = reconstruct_closed_form(spec).q
    else:
        raise ValueError(f"unknown method {method!r}")
    mask = cv.interior(r.t.size, margin)
    _, _, fitted = align_initial_conditions(r.q[mask], G[mask])
    return RoundTripReport(method, float(np.max(qnorm(fitted - r.q[mask]))), prof)
