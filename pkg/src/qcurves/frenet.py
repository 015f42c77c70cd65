"""Curvature of quaternionic curves in the Cartesian and symplectic pictures.

Cartesian: q'' = kappa q' (arc-length gauge) with kappa = k1 i + k2 j + k3 k.
For an arbitrary regular parametrization the components follow from

    k_i = <q'', e_i q'> / |q'|^3,

i.e. <q'', N_i>/|q'|^2 with N_i = e_i q'/|q'|. Symplectic: q'' = q' c j with a
complex c, extracted from the normals q'j and q'k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from . import curve as cv
from .curve import CurveSamples
from .errors import InvalidInputError
from .quat import IMAGINARY_UNITS, BASIS, Quaternion, imag_vector, qdot, qmul, qnorm


@dataclass(frozen=True)
class CurvatureProfile:
    """Cartesian curvature components per node; ``residual`` is the Frenet defect."""

    t: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    k3: np.ndarray
    kappa_mag: np.ndarray
    residual: np.ndarray

    @classmethod
    def from_components(cls, t, k, residual=None):
        """Profile from an (N, 3) array of components; residual defaults to zero."""
        t = np.asarray(t, dtype=float)
        k = np.asarray(k, dtype=float)
        if k.shape != (t.size, 3):
            raise InvalidInputError(f"curvature components must have shape ({t.size}, 3), got {k.shape}")
        res = np.zeros(t.size) if residual is None else np.asarray(residual, dtype=float)
        return cls(t, k[:, 0].copy(), k[:, 1].copy(), k[:, 2].copy(), np.sqrt(np.sum(k * k, axis=1)), res)

    @property
    def components(self) -> np.ndarray:
        return np.stack([self.k1, self.k2, self.k3], axis=-1)

    @property
    def kappa(self) -> np.ndarray:
        """Curvature as pure imaginary quaternions, shape (N, 4)."""
        return imag_vector(self.components)

    @property
    def omega(self) -> np.ndarray:
        """Unit direction kappa/|kappa|; zero where the curvature vanishes."""
        k = self.kappa
        mag = self.kappa_mag
        out = np.zeros_like(k)
        nz = mag > 0
        out[nz] = k[nz] / mag[nz, None]
        return out


@dataclass(frozen=True)
class SymplecticCurvatureProfile:
    t: np.ndarray
    c: np.ndarray
    residual: np.ndarray


# ---------------------------------------------------------------------------
# frames and extraction
# ---------------------------------------------------------------------------

def normal_frame(c: CurveSamples, node: int):
    """(N1, N2, N3) = (i T, j T, k T) at one node, T the unit tangent."""
    T = cv.tangent(c)[node]
    return tuple(Quaternion.from_array(qmul(e, T)) for e in IMAGINARY_UNITS)


def normal_frames(T: np.ndarray) -> np.ndarray:
    """Normals e_i T for all nodes, shape (3, N, 4)."""
    return np.stack([qmul(e, T) for e in IMAGINARY_UNITS])


def _regular_derivatives(c: CurveSamples):
    d = cv.derivatives(c)
    v = qnorm(d.d1)
    cv.require_regular(c, v)
    return d, v


def cartesian_components(d1: np.ndarray, d2: np.ndarray) -> np.ndarray:
    """k_i = <q'', e_i q'> / |q'|^3 per node, shape (N, 3)."""
    v = qnorm(d1)
    return np.stack([qdot(d2, qmul(e, d1)) for e in IMAGINARY_UNITS], axis=-1) / v[:, None] ** 3


def symplectic_components(d1: np.ndarray, d2: np.ndarray) -> np.ndarray:
    """c = (<q'', q'j> + i <q'', q'k>) / |q'|^3 per node."""
    v3 = qnorm(d1) ** 3
    re = qdot(d2, qmul(d1, BASIS["j"])) / v3
    im = qdot(d2, qmul(d1, BASIS["k"])) / v3
    return re + 1j * im


def _arc_length_gauge(c: CurveSamples):
    r, t_of_s = cv.arc_length_reparametrization(c)
    d = cv.derivatives(r)
    return r, t_of_s, d


def _to_source_grid(c: CurveSamples, t_of_s, values):
    return np.interp(c.t, t_of_s, values)


def curvature_cartesian(c: CurveSamples) -> CurvatureProfile:
    """Quaternionic curvature of a regular curve, node by node.

    The residual |q'' - kappa q'| / max(1, |q''|) is measured on the
    arc-length reparametrized curve, where the Frenet equation holds, and
    carried back to the source nodes.
    """
    d, _ = _regular_derivatives(c)
    k = cartesian_components(d.d1, d.d2)
    r, t_of_s, ds = _arc_length_gauge(c)
    k_s = CubicSpline(c.t, k, axis=0)(t_of_s)
    defect = qnorm(ds.d2 - qmul(imag_vector(k_s), ds.d1)) / np.maximum(1.0, qnorm(ds.d2))
    return CurvatureProfile.from_components(c.t, k, _to_source_grid(c, t_of_s, defect))


def curvature_symplectic(c: CurveSamples) -> SymplecticCurvatureProfile:
    """Complex curvature of a regular curve.

    The residual |q'' - q' c j| / max(1, |q''|) in arc-length gauge is large
    when the normal acceleration leaves the plane q' span{j, k}; such curves
    have no faithful complex curvature and are reported, not rejected.
    """
    d, _ = _regular_derivatives(c)
    cc = symplectic_components(d.d1, d.d2)
    r, t_of_s, ds = _arc_length_gauge(c)
    spline = CubicSpline(c.t, np.stack([cc.real, cc.imag], axis=-1), axis=0)(t_of_s)
    cj = np.zeros((t_of_s.size, 4))
    cj[:, 2], cj[:, 3] = spline[:, 0], spline[:, 1]
    defect = qnorm(ds.d2 - qmul(ds.d1, cj)) / np.maximum(1.0, qnorm(ds.d2))
    return SymplecticCurvatureProfile(c.t, cc, _to_source_grid(c, t_of_s, defect))


# ---------------------------------------------------------------------------
# matrix forms
# ---------------------------------------------------------------------------

def frenet_matrix(kappa) -> np.ndarray:
    """4x4 real matrix of left multiplication by kappa = k1 i + k2 j + k3 k.

    Built column by column from the Hamilton product of kappa with the basis.
    """
    k = imag_vector(np.asarray(kappa, dtype=float).reshape(3))
    return np.stack([qmul(k, BASIS[e]) for e in ("1", "i", "j", "k")], axis=-1)


def frenet_matrix_apply(kappa, v) -> np.ndarray:
    return frenet_matrix(kappa) @ np.asarray(v, dtype=float)


def symplectic_matrix(c: complex) -> np.ndarray:
    """[[0, -conj(c)], [c, 0]] acting on the column (z0, z1)."""
    c = complex(c)
    return np.array([[0.0, -c.conjugate()], [c, 0.0]], dtype=complex)


def symplectic_matrix_apply(c: complex, z) -> np.ndarray:
    return symplectic_matrix(c) @ np.asarray(z, dtype=complex)


def symplectic_matrix_from_product(c: complex) -> np.ndarray:
    """Matrix of z -> symplectic components of q * (c j), read off the product.

    Right multiplication by c j is complex-linear in (z0, z1), so the images of
    q = 1 and q = j give its two columns.
    """
    c = complex(c)
    cj = np.array([0.0, 0.0, c.real, c.imag])
    cols = []
    for q in (BASIS["1"], BASIS["j"]):
        w = qmul(q, cj)
        cols.append([complex(w[0], w[1]), complex(w[2], w[3])])
    return np.array(cols, dtype=complex).T


# ---------------------------------------------------------------------------
# consistency measures
# ---------------------------------------------------------------------------

def acceleration_tangency(c: CurveSamples, zero_tol=1e-6) -> np.ndarray:
    """|<q', q''>| / |q''| per node after arc-length reparametrization.

    In that gauge |q''| is the curvature magnitude; nodes where it is below
    ``zero_tol`` have no meaningful direction and report 0. Values are on
    the reparametrized grid.
    """
    r, _, d = _arc_length_gauge(c)
    acc = qnorm(d.d2)
    dot = np.abs(qdot(d.d1, d.d2))
    big = acc > zero_tol
    return np.where(big, dot / np.where(big, acc, 1.0), 0.0)


def tangent_derivative_defect(c: CurveSamples):
    """Defect of d/dt(q'/|q'|) = kappa q' on the raw parametrization.

    Returns per-node |dT/dt - kappa q'| and the scale max |kappa q'| for
    normalization; dT/dt is a finite difference of the sampled unit tangent.
    """
    d, v = _regular_derivatives(c)
    T = d.d1 / v[:, None]
    dT = cv.numerics.derivative(T, c.t, 1)
    k = imag_vector(cartesian_components(d.d1, d.d2))
    rhs = qmul(k, d.d1)
    return qnorm(dT - rhs), float(np.max(qnorm(rhs)))
