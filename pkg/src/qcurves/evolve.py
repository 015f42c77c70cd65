"""Evolutes (curves of centers of curvature) and evolvents (involutes).

All constructions take unit-speed curves. Derived curves are compared in
their own arc-length gauge, so each check reparametrizes before measuring
curvature and maps results back to the source parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import curve as cv
from .curve import CurveSamples
from .errors import DegenerateGeometryError, InvalidInputError
from .frenet import (
    CurvatureProfile,
    cartesian_components,
    curvature_cartesian,
    curvature_symplectic,
    symplectic_components,
)
from .quat import imag_vector, qdot, qmul, qnorm
from .report import CheckReport, measured, untestable

#: |kappa| and |lambda0 - L| below this are singular (curve units)
SINGULAR_TOL = 1e-6
#: interior |q'| - 1 allowed for inputs that must be unit speed
UNIT_SPEED_TOL = 1e-4
#: a derived curve whose interior speed stays below this is a point
DEGENERATE_SPEED = 1e-6
#: nodes dropped at each end of a derived curve before measuring
MARGIN = 4
#: spline order used when derived curves are resampled in arc length
REPARAM_ORDER = 5


def _require_unit_speed(c: CurveSamples, what: str, tol=UNIT_SPEED_TOL):
    defect = cv.unit_speed_defect(c)
    if defect > tol:
        raise InvalidInputError(
            f"{what} needs a unit-speed curve (max ||q'| - 1| = {defect:.3g}); reparametrize by arc length first"
        )


def _inner(t_of_s, t_src, margin):
    """Resampled nodes at least ``margin`` nodes from both ends, counted on
    the resampled grid and on the source grid.

    A fast stretch of a curve packs many arc-length nodes into a few source
    intervals; the source margin keeps its end errors out of measurements.
    """
    m = cv.interior(t_of_s.size, margin)
    return m & (t_of_s >= t_src[margin]) & (t_of_s <= t_src[-1 - margin])


def _runs(mask: np.ndarray) -> List[np.ndarray]:
    """Index arrays of the maximal runs of True in ``mask``."""
    idx = np.nonzero(mask)[0]
    if idx.size == 0:
        return []
    breaks = np.nonzero(np.diff(idx) > 1)[0] + 1
    return np.split(idx, breaks)


def _longest_run(mask):
    runs = _runs(mask)
    return max(runs, key=len) if runs else np.array([], dtype=int)


# ---------------------------------------------------------------------------
# evolutes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvoluteResult:
    """Centers of curvature on the nonsingular source nodes.

    ``omega_used`` holds the unit direction that multiplies q'/|kappa|: the
    source curvature direction for the Cartesian construction, c j/|c| for
    the symplectic one (applied on the right).
    """

    curve: Optional[CurveSamples]
    omega_used: np.ndarray
    singular_nodes: List[float]
    kept: np.ndarray


def _finish_evolute(c, qE, omega, kmag, tol):
    keep = kmag > tol
    singular = [float(x) for x in c.t[~keep]]
    if not np.any(keep):
        raise DegenerateGeometryError("straight line has no evolute: curvature vanishes at every node")
    if np.count_nonzero(keep) < cv.MIN_NODES:
        raise DegenerateGeometryError("fewer than five nonsingular nodes: evolute undefined")
    curve = CurveSamples(c.t[keep], qE[keep], {"derived": "evolute"})
    return EvoluteResult(curve, omega[keep], singular, keep)


def evolute(c: CurveSamples, singular_tol=SINGULAR_TOL) -> EvoluteResult:
    """q_E = q + omega q' / |kappa| with omega = kappa/|kappa| of the source."""
    _require_unit_speed(c, "evolute")
    d = cv.derivatives(c, boundary_order=4)
    k = imag_vector(cartesian_components(d.d1, d.d2))
    kmag = qnorm(k)
    safe = np.where(kmag > singular_tol, kmag, 1.0)
    omega = k / safe[:, None]
    qE = c.q + qmul(omega, d.d1) / safe[:, None]
    return _finish_evolute(c, qE, omega, kmag, singular_tol)


def symplectic_evolute(c: CurveSamples, singular_tol=SINGULAR_TOL) -> EvoluteResult:
    """q_E = q + q' c j / |c|^2 from the complex curvature of the source."""
    _require_unit_speed(c, "evolute")
    d = cv.derivatives(c, boundary_order=4)
    cc = symplectic_components(d.d1, d.d2)
    cmag = np.abs(cc)
    safe = np.where(cmag > singular_tol, cmag, 1.0)
    unit = np.zeros((c.t.size, 4))
    unit[:, 2], unit[:, 3] = cc.real / safe, cc.imag / safe
    qE = c.q + qmul(d.d1, unit) / safe[:, None]
    return _finish_evolute(c, qE, unit, cmag, singular_tol)


def _evolute_velocity(c: CurveSamples, E: EvoluteResult):
    dE = cv.derivatives(E.curve).d1
    d1 = cv.derivatives(c).d1[E.kept]
    return dE, d1


def evolute_tangent_check(c: CurveSamples, E: EvoluteResult, tol=1e-3, margin=MARGIN) -> CheckReport:
    """Normalized <q_E', q'> over interior nodes; the evolute tangent is normal to q'."""
    name = "evolute-tangent-normal"
    dE, d1 = _evolute_velocity(c, E)
    speedE = qnorm(dE)
    inner = cv.interior(speedE.size, margin)
    if not np.any(inner) or np.max(speedE[inner]) <= DEGENERATE_SPEED:
        return untestable(name, "evolute degenerates to a point (constant curvature)", tol)
    usable = inner & (speedE > DEGENERATE_SPEED)
    flagged = E.curve.t[inner & ~usable]
    ratio = np.abs(qdot(dE, d1))[usable] / (speedE[usable] * qnorm(d1)[usable])
    return measured(name, float(np.max(ratio)), tol, flagged)


def _relation_subcurve(E: EvoluteResult, margin):
    dE = cv.derivatives(E.curve).d1
    speedE = qnorm(dE)
    inner = cv.interior(speedE.size, margin)
    if not np.any(inner) or np.max(speedE[inner]) <= DEGENERATE_SPEED:
        return None, speedE
    run = _longest_run(inner & (speedE > 1e-3 * np.max(speedE[inner])))
    if run.size < 3 * cv.MIN_NODES:
        return None, speedE
    return run, speedE


def _relation(c, E, source_values, extract, name, tol, margin):
    run, speedE = _relation_subcurve(E, margin)
    if run is None:
        return untestable(name, "relation untestable, evolute degenerate", tol)
    sub = CurveSamples(E.curve.t[run], E.curve.q[run])
    Es, t_of_s = cv.arc_length_reparametrization(sub, order=REPARAM_ORDER)
    kE = extract(Es)
    tE = E.curve.t
    lhs = kE * np.interp(t_of_s, tE, speedE)[:, None]
    rhs = np.stack([np.interp(t_of_s, c.t, v) for v in source_values.T], axis=-1)
    inner = _inner(t_of_s, tE[run], margin)
    scale = max(float(np.max(np.linalg.norm(rhs[inner], axis=1))), 1e-300)
    dev = np.max(np.abs(lhs - rhs)[inner]) / scale
    return measured(name, float(dev), tol)


def evolute_curvature_relation(c: CurveSamples, E: EvoluteResult, tol=5e-3, margin=MARGIN) -> CheckReport:
    """kappa_E,i |q_E'| against kappa_i, relative to max |kappa|.

    kappa_E is measured on the arc-length reparametrized evolute and |q_E'|
    is the speed of the evolute in the source arc length.
    """
    source = curvature_cartesian(c).components

    def extract(Es):
        return curvature_cartesian(Es).components

    return _relation(c, E, source, extract, "evolute-curvature-relation", tol, margin)


def symplectic_evolute_curvature_relation(c: CurveSamples, E: EvoluteResult, tol=5e-3, margin=MARGIN) -> CheckReport:
    """Re/Im of c_E |q_E'| against Re/Im of c."""
    cc = curvature_symplectic(c).c
    source = np.stack([cc.real, cc.imag], axis=-1)

    def extract(Es):
        ce = curvature_symplectic(Es).c
        return np.stack([ce.real, ce.imag], axis=-1)

    return _relation(c, E, source, extract, "symplectic-evolute-curvature-relation", tol, margin)


# ---------------------------------------------------------------------------
# evolvents
# ---------------------------------------------------------------------------

def evolvent(c: CurveSamples, lambda0: float) -> CurveSamples:
    """q_I = q + (lambda0 - L(t)) q', L measured from the first node."""
    _require_unit_speed(c, "evolvent")
    d1 = cv.derivatives(c, boundary_order=4).d1
    L = cv.cumulative_arc_length(c)
    qI = c.q + (lambda0 - L)[:, None] * d1
    return CurveSamples(c.t, qI, {"derived": "evolvent", "lambda0": float(lambda0)})


@dataclass(frozen=True)
class EvolventCurvature:
    """Predicted and measured curvature of an evolvent on the source grid.

    ``predicted`` is omega/|lambda0 - L|, NaN at cusp nodes. ``measured``
    is NaN wherever no numerical value was obtained. ``relative_error``
    compares magnitudes.
    """

    predicted: CurvatureProfile
    measured: np.ndarray
    relative_error: np.ndarray
    direction_error: np.ndarray
    flagged: List[float]


def evolvent_curvature(c: CurveSamples, lambda0: float, singular_tol=SINGULAR_TOL, margin=MARGIN) -> EvolventCurvature:
    qI = evolvent(c, lambda0)
    L = cv.cumulative_arc_length(c)
    gap = np.abs(lambda0 - L)
    ok = gap > singular_tol
    prof = curvature_cartesian(c)
    omega = prof.omega
    pred = np.full((c.t.size, 3), np.nan)
    pred[ok] = omega[ok, 1:] / gap[ok, None]
    predicted = CurvatureProfile.from_components(c.t, pred, np.full(c.t.size, np.nan))

    measured_k = np.full((c.t.size, 3), np.nan)
    for run in _runs(ok):
        if run.size < 3 * cv.MIN_NODES:
            continue
        sub = CurveSamples(c.t[run], qI.q[run])
        if not cv.is_regular(sub):
            continue
        Is, t_of_s = cv.arc_length_reparametrization(sub, order=REPARAM_ORDER)
        kI = curvature_cartesian(Is).components
        inner = cv.interior(run.size, margin)
        vals = np.stack([np.interp(c.t[run], t_of_s, v) for v in kI.T], axis=-1)
        measured_k[run[inner]] = vals[inner]

    mag_m = np.linalg.norm(measured_k, axis=1)
    mag_p = np.linalg.norm(pred, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = np.abs(mag_m - mag_p) / mag_p
        dirn = np.linalg.norm(measured_k / mag_m[:, None] - pred / mag_p[:, None], axis=1)
    return EvolventCurvature(predicted, measured_k, rel, dirn, [float(x) for x in c.t[~ok]])


def evolvent_tangent_check(c: CurveSamples, lambda0: float, tol=1e-3, margin=MARGIN) -> CheckReport:
    """Normalized <q_I', q'>; the evolvent moves normal to the curve."""
    name = "evolvent-tangent-normal"
    qI = evolvent(c, lambda0)
    dI = cv.derivatives(qI).d1
    d1 = cv.derivatives(c).d1
    sI = qnorm(dI)
    inner = cv.interior(sI.size, margin)
    if np.max(sI[inner]) <= DEGENERATE_SPEED:
        return untestable(name, "evolvent degenerates to a point", tol)
    usable = inner & (sI > 1e-3 * np.max(sI[inner]))
    ratio = np.abs(qdot(dI, d1))[usable] / (sI[usable] * qnorm(d1)[usable])
    return measured(name, float(np.max(ratio)), tol, c.t[inner & ~usable])


def evolvent_curvature_check(c: CurveSamples, lambda0: float, tol=1e-2, window=None) -> CheckReport:
    """Magnitude law |kappa_I| = 1/|lambda0 - L| over the measured nodes."""
    name = "evolvent-curvature-law"
    try:
        res = evolvent_curvature(c, lambda0)
    except DegenerateGeometryError as exc:
        return untestable(name, str(exc), tol)
    sel = np.isfinite(res.relative_error)
    if window is not None:
        sel &= (c.t >= window[0]) & (c.t <= window[1])
    if not np.any(sel):
        return untestable(name, "no node with a measurable evolvent curvature", tol, res.flagged)
    return measured(name, float(np.max(res.relative_error[sel])), tol, res.flagged)


def evolute_of_evolvent_roundtrip(c: CurveSamples, lambda0: float, tol=1e-3, margin=MARGIN) -> CheckReport:
    """Evolute of the reparametrized evolvent against the source curve."""
    name = "evolute-of-evolvent"
    qI = evolvent(c, lambda0)
    gap = np.abs(lambda0 - cv.cumulative_arc_length(c))
    run = _longest_run(gap > SINGULAR_TOL)
    if run.size < 3 * cv.MIN_NODES:
        raise DegenerateGeometryError("no nonsingular sub-interval for the evolvent")
    sub = CurveSamples(c.t[run], qI.q[run])
    if not cv.is_regular(sub) or np.max(cv.speed(sub)) <= DEGENERATE_SPEED:
        return untestable(name, "evolvent degenerate", tol)
    Is, t_of_s = cv.arc_length_reparametrization(sub, order=REPARAM_ORDER)
    try:
        E = evolute(Is)
    except DegenerateGeometryError as exc:
        return untestable(name, str(exc), tol)
    back = cv.interpolate(c, t_of_s[E.kept], REPARAM_ORDER)
    inner = _inner(t_of_s[E.kept], sub.t, margin)
    if not np.any(inner):
        return untestable(name, "no interior nodes left to compare", tol, E.singular_nodes)
    dev = float(np.max(qnorm(E.curve.q - back)[inner]))
    return measured(name, dev, tol, E.singular_nodes)
