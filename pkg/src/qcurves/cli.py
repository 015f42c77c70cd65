"""Command-line front end.

    qcurves sample SPEC OUT
    qcurves curvature SPEC OUT [--picture cartesian|symplectic]
    qcurves evolute SPEC OUT [--picture cartesian|symplectic]
    qcurves evolvent SPEC OUT --lambda0 X
    qcurves reconstruct SPEC OUT [--method closed|ode|symplectic]
    qcurves verify SPEC REPORT

Data goes to OUT (CSV) and, for evolute/evolvent, OUT.report.json.
Diagnostics go to stderr. Exit status: 0 success, 1 failed check (verify
only), 2 bad input.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import List

import numpy as np

from . import curve as cv
from . import evolve as ev
from . import specfile as sf
from .errors import DegenerateGeometryError, InvalidInputError, IrregularCurveError, QuaternionDomainError
from .frenet import curvature_cartesian, curvature_symplectic, normal_frames
from .quat import qdot
from .reconstruct import reconstruct_closed_form, reconstruct_ode, reconstruct_symplectic, reconstruction_roundtrip
from .report import CheckReport, FAIL, measured, untestable

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2

#: interior Frenet residual allowed by verify
RESIDUAL_TOL = 1e-4
#: symplectic residual above this marks a curve as outside the representable class
SYMPLECTIC_WARN = 0.1
ORTHO_TOL = 1e-12
ROUNDTRIP_TOL = 1e-4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def _unit_speed(c: cv.CurveSamples, note=""):
    """``c`` itself if unit speed, else its arc-length reparametrization."""
    defect = cv.unit_speed_defect(c)
    if defect <= ev.UNIT_SPEED_TOL:
        return c, False
    _warn(f"curve is not unit speed (max ||q'| - 1| = {defect:.3g}); reparametrized by arc length{note}")
    return cv.reparametrize_by_arc_length(c, order=ev.REPARAM_ORDER), True


def _curve_columns(c: cv.CurveSamples):
    return [c.t] + [c.q[:, i] for i in range(4)]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_sample(args):
    spec = sf.load_spec(args.spec)
    sf.write_csv(args.out, sf.CURVE_HEADER, _curve_columns(spec.curve))
    return EXIT_OK


def cmd_curvature(args):
    c = sf.load_spec(args.spec).curve
    if args.picture == "cartesian":
        p = curvature_cartesian(c)
        sf.write_csv(args.out, sf.CARTESIAN_HEADER, [p.t, p.k1, p.k2, p.k3, p.kappa_mag, p.residual])
        return EXIT_OK
    p = curvature_symplectic(c)
    worst = float(np.max(p.residual[cv.interior(p.t.size)]))
    if worst > SYMPLECTIC_WARN:
        _warn(f"symplectic residual up to {worst:.3g}: the curve is not symplectically representable")
    sf.write_csv(args.out, sf.SYMPLECTIC_HEADER, [p.t, p.c.real, p.c.imag, p.residual])
    return EXIT_OK


def cmd_evolute(args):
    c, reparam = _unit_speed(sf.load_spec(args.spec).curve, ", output t is arc length")
    E = ev.evolute(c) if args.picture == "cartesian" else ev.symplectic_evolute(c)
    if E.singular_nodes:
        _warn(f"{len(E.singular_nodes)} node(s) with vanishing curvature skipped")
    sf.write_csv(args.out, sf.CURVE_HEADER, _curve_columns(E.curve))
    sf.write_json(f"{args.out}.report.json", {
        "command": "evolute",
        "picture": args.picture,
        "reparametrized": reparam,
        "singular_nodes": E.singular_nodes,
    })
    return EXIT_OK


def cmd_evolvent(args):
    if not math.isfinite(args.lambda0):
        raise InvalidInputError("--lambda0 must be finite")
    c, reparam = _unit_speed(sf.load_spec(args.spec).curve, ", output t is arc length")
    qI = ev.evolvent(c, args.lambda0)
    gap = np.abs(args.lambda0 - cv.cumulative_arc_length(c))
    singular = [float(x) for x in c.t[gap <= ev.SINGULAR_TOL]]
    if singular:
        _warn(f"evolvent has cusp node(s) at t = {singular}")
    sf.write_csv(args.out, sf.CURVE_HEADER, _curve_columns(qI))
    sf.write_json(f"{args.out}.report.json", {
        "command": "evolvent",
        "lambda0": args.lambda0,
        "reparametrized": reparam,
        "singular_nodes": singular,
    })
    return EXIT_OK


def cmd_reconstruct(args):
    spec = sf.load_spec(args.spec)
    r = spec.reconstruction
    if r is None:
        raise InvalidInputError(f"{args.spec}: reconstruct needs a spec of kind 'reconstruction', got {spec.kind!r}")
    if args.method == "closed":
        c = reconstruct_closed_form(r)
    elif args.method == "ode":
        c = reconstruct_ode(r.profile, r.P0, r.V0)
    else:
        phi0 = r.phi0
        if phi0 is None:
            raise InvalidInputError("symplectic reconstruction needs V0 in span{1, omega}; give phi0")
        c = reconstruct_symplectic(r.t, r.kappa_mag, phi0, complex(r.P0[0], r.P0[1]), complex(r.P0[2], r.P0[3]))
    sf.write_csv(args.out, sf.CURVE_HEADER, _curve_columns(c))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _frame_orthogonality(c):
    name = "normal-frame-orthogonality"
    T = cv.tangent(c)
    vecs = [T] + list(normal_frames(T))
    worst = 0.0
    for a in range(4):
        for b in range(a + 1, 4):
            worst = max(worst, float(np.max(np.abs(qdot(vecs[a], vecs[b])))))
    return measured(name, worst, ORTHO_TOL)


def _acceleration_tangency(c):
    from .frenet import acceleration_tangency

    tol = 1e-4
    v = acceleration_tangency(c)
    return measured("acceleration-tangent-orthogonality", float(np.max(v[cv.interior(v.size)])), tol)


def _frenet_residual(c):
    p = curvature_cartesian(c)
    return measured("frenet-residual", float(np.max(p.residual[cv.interior(p.t.size)])), RESIDUAL_TOL)


def _roundtrip(c):
    name = "curvature-reconstruction-roundtrip"
    try:
        r = reconstruction_roundtrip(c, method="ode")
    except (InvalidInputError, DegenerateGeometryError) as exc:
        return untestable(name, str(exc), ROUNDTRIP_TOL)
    return measured(name, r.max_deviation, ROUNDTRIP_TOL)


def _evolute_checks(c) -> List[CheckReport]:
    names = ("evolute-tangent-normal", "evolute-curvature-relation")
    try:
        E = ev.evolute(c)
    except DegenerateGeometryError as exc:
        return [untestable(n, str(exc)) for n in names]
    return [ev.evolute_tangent_check(c, E), ev.evolute_curvature_relation(c, E)]


def _evolvent_checks(c) -> List[CheckReport]:
    lam = float(cv.cumulative_arc_length(c)[-1]) + 1.0
    out = [ev.evolvent_tangent_check(c, lam), ev.evolvent_curvature_check(c, lam)]
    try:
        out.append(ev.evolute_of_evolvent_roundtrip(c, lam))
    except DegenerateGeometryError as exc:
        out.append(untestable("evolute-of-evolvent", str(exc)))
    return out


def verify_curve(c: cv.CurveSamples) -> List[CheckReport]:
    """Run the invariant battery on a curve; evolute checks use its arc-length form."""
    u, _ = _unit_speed(c)
    checks = [_frame_orthogonality(c), _acceleration_tangency(c), _frenet_residual(c), _roundtrip(c)]
    checks += _evolute_checks(u)
    checks += _evolvent_checks(u)
    return checks


def cmd_verify(args):
    c = sf.load_spec(args.spec).curve
    checks = verify_curve(c)
    sf.write_json(args.out, [r.to_dict() for r in checks])
    failed = [r.name for r in checks if r.status == FAIL]
    for r in checks:
        print(f"{r.status:10s} {r.name}", file=sys.stderr)
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcurves", description="Sample, analyse and verify quaternionic curves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, out="out"):
        s = sub.add_parser(name, help=help)
        s.add_argument("spec", help="JSON curve spec")
        s.add_argument(out, help="output file")
        s.set_defaults(func=func)
        return s

    add("sample", cmd_sample, "write the curve samples")
    s = add("curvature", cmd_curvature, "write the curvature profile")
    s.add_argument("--picture", choices=("cartesian", "symplectic"), default="cartesian")
    s = add("evolute", cmd_evolute, "write the evolute")
    s.add_argument("--picture", choices=("cartesian", "symplectic"), default="cartesian")
    s = add("evolvent", cmd_evolvent, "write an evolvent")
    s.add_argument("--lambda0", type=float, required=True, help="string length at the first node")
    s = add("reconstruct", cmd_reconstruct, "rebuild a curve from a curvature profile")
    s.add_argument("--method", choices=("closed", "ode", "symplectic"), default="closed")
    add("verify", cmd_verify, "run the invariant checks and write a JSON report", out="out")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with np.errstate(all="ignore"):
            return args.func(args)
    except (InvalidInputError, IrregularCurveError, DegenerateGeometryError, QuaternionDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
