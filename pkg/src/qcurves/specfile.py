"""JSON curve specifications in, CSV tables out.

Schema (all numbers are JSON numbers; quaternions are [x0, x1, x2, x3],
pure imaginary directions may also be given as [x1, x2, x3])::

    {"kind": "samples", "t": [...], "x0": [...], "x1": [...], "x2": [...], "x3": [...]}
    {"kind": "builtin-polar", "kappa": [...], "phi0": 0.0, "grid": GRID}
    {"kind": "builtin-symplectic", "c": [re, im], "phi0": 0.0, "grid": GRID}
    {"kind": "reconstruction", "kappa_mag": 1.0 | [...], "omega": [...],
     "P0": [...], "V0": [...] | "phi0": 0.0, "grid": GRID}

GRID is either {"start": a, "stop": b, "nodes": n} or an explicit array
given as the top-level key "t" instead of "grid".
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import curve as cv
from .curve import CurveSamples
from .errors import InvalidInputError, QuaternionDomainError
from .reconstruct import ReconstructionSpec, reconstruct_closed_form

KINDS = ("samples", "builtin-polar", "builtin-symplectic", "reconstruction")

CURVE_HEADER = ("t", "x0", "x1", "x2", "x3")
CARTESIAN_HEADER = ("t", "k1", "k2", "k3", "kmag", "residual")
SYMPLECTIC_HEADER = ("t", "re_c", "im_c", "residual")


class SpecError(InvalidInputError):
    """Invalid spec file; ``line`` is 1-based when it could be located."""

    def __init__(self, path, message, line=None):
        self.path = str(path)
        self.line = line
        where = f"{self.path}:{line}" if line else self.path
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    curve: CurveSamples
    reconstruction: Optional[ReconstructionSpec] = None


class _Doc:
    """Parsed document plus the raw text, used to point errors at lines."""

    def __init__(self, path, text):
        self.path = path
        self.text = text
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(path, f"malformed JSON: {exc.msg} (column {exc.colno})", exc.lineno) from None
        if not isinstance(self.data, dict):
            raise SpecError(path, "top level must be a JSON object", 1)

    def line_of(self, key):
        m = re.search(r'"%s"\s*:' % re.escape(key), self.text)
        return self.text.count("\n", 0, m.start()) + 1 if m else None

    def fail(self, key, message):
        raise SpecError(self.path, f"{key}: {message}" if key else message, self.line_of(key) if key else None)

    def has(self, key):
        return key in self.data

    def number(self, key, default=None, obj=None, parent=None):
        src = self.data if obj is None else obj
        if key not in src:
            if default is None:
                self.fail(parent or key, f"missing required field {key!r}")
            return float(default)
        v = src[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            self.fail(key, "expected a finite number")
        return float(v)

    def array(self, key, length=None, obj=None, allow_scalar=False):
        src = self.data if obj is None else obj
        if key not in src:
            self.fail(key, f"missing required field {key!r}")
        v = src[key]
        if allow_scalar and isinstance(v, (int, float)) and not isinstance(v, bool):
            v = [v]
        if not isinstance(v, list) or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
            self.fail(key, "expected an array of numbers")
        a = np.asarray(v, dtype=float)
        if not np.all(np.isfinite(a)):
            self.fail(key, "array contains non-finite values")
        if length is not None and a.size not in length:
            self.fail(key, f"expected {' or '.join(map(str, length))} numbers, got {a.size}")
        return a


def _grid(doc: _Doc) -> np.ndarray:
    if doc.has("t"):
        t = doc.array("t")
    elif doc.has("grid"):
        g = doc.data["grid"]
        if not isinstance(g, dict):
            doc.fail("grid", "expected an object with start, stop, nodes")
        start = doc.number("start", obj=g, parent="grid")
        stop = doc.number("stop", obj=g, parent="grid")
        n = doc.number("nodes", obj=g, parent="grid")
        if n != int(n) or n < cv.MIN_NODES:
            doc.fail("nodes", f"node count must be an integer >= {cv.MIN_NODES}")
        if not stop > start:
            doc.fail("stop", "grid stop must exceed start")
        t = np.linspace(start, stop, int(n))
    else:
        doc.fail(None, "missing grid: give 't' or 'grid'")
    key = "t" if doc.has("t") else "grid"
    if t.size < cv.MIN_NODES:
        doc.fail(key, f"grid needs at least {cv.MIN_NODES} nodes")
    bad = np.nonzero(np.diff(t) <= 0)[0]
    if bad.size:
        doc.fail(key, f"grid not strictly increasing at index {int(bad[0]) + 1}")
    return t


def _imaginary(doc, key):
    a = doc.array(key, length=(3, 4))
    if a.size == 4:
        if a[0] != 0.0:
            doc.fail(key, "must be pure imaginary (x0 = 0)")
        a = a[1:]
    return np.concatenate([[0.0], a])


def _samples(doc):
    t = _grid(doc)
    cols = []
    for key in CURVE_HEADER[1:]:
        a = doc.array(key)
        if a.size != t.size:
            doc.fail(key, f"has {a.size} values but the grid has {t.size}")
        cols.append(a)
    return CurveSpec("samples", CurveSamples(t, np.stack(cols, axis=-1), {"source": "samples"}))


def _builtin_polar(doc):
    t = _grid(doc)
    kappa = _imaginary(doc, "kappa")
    if not np.any(kappa):
        doc.fail("kappa", "must be nonzero")
    return CurveSpec("builtin-polar", cv.builtin_constant_curvature(kappa, doc.number("phi0", 0.0), t))


def _builtin_symplectic(doc):
    t = _grid(doc)
    c = doc.array("c", length=(2,))
    if not np.any(c):
        doc.fail("c", "must be nonzero")
    return CurveSpec("builtin-symplectic", cv.builtin_symplectic(complex(c[0], c[1]), doc.number("phi0", 0.0), t))


def _reconstruction(doc):
    t = _grid(doc)
    k = doc.array("kappa_mag", allow_scalar=True)
    if k.size not in (1, t.size):
        doc.fail("kappa_mag", f"has {k.size} values but the grid has {t.size}")
    if np.any(k < 0):
        doc.fail("kappa_mag", "must be nonnegative")
    omega = _imaginary(doc, "omega") if doc.has("omega") else np.array([0.0, 1.0, 0.0, 0.0])
    n = np.linalg.norm(omega)
    if abs(n - 1.0) > 1e-9:
        doc.fail("omega", f"must be a unit direction (norm {float(n)!r})")
    P0 = doc.array("P0", length=(4,)) if doc.has("P0") else np.zeros(4)
    if doc.has("V0") and doc.has("phi0"):
        doc.fail("V0", "give either V0 or phi0, not both")
    try:
        if doc.has("V0"):
            spec = ReconstructionSpec(t, k if k.size > 1 else k[0], omega, P0, doc.array("V0", length=(4,)))
        else:
            spec = ReconstructionSpec.from_phase(t, k if k.size > 1 else k[0], omega, doc.number("phi0", 0.0), P0)
    except InvalidInputError as exc:
        doc.fail("V0" if "V0" in str(exc) else None, str(exc))
    return CurveSpec("reconstruction", reconstruct_closed_form(spec), spec)


_READERS = {
    "samples": _samples,
    "builtin-polar": _builtin_polar,
    "builtin-symplectic": _builtin_symplectic,
    "reconstruction": _reconstruction,
}


def parse_spec(text: str, path="<spec>") -> CurveSpec:
    doc = _Doc(path, text)
    kind = doc.data.get("kind")
    if kind not in _READERS:
        doc.fail("kind" if doc.has("kind") else None, f"kind must be one of {', '.join(KINDS)}")
    try:
        return _READERS[kind](doc)
    except (InvalidInputError, QuaternionDomainError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(path, str(exc)) from None


def load_spec(path) -> CurveSpec:
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise SpecError(path, f"cannot read spec file: {exc}") from None
    return parse_spec(text, path)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def format_number(x) -> str:
    return format(float(x) + 0.0, ".17g")


def csv_text(header, columns) -> str:
    rows = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    lines = [",".join(header)]
    lines.extend(",".join(format_number(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_csv(path, header, columns):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(csv_text(header, columns))


def write_json(path, payload):
    with open(path, "w", encoding="utf-8", newline="") as f:
        json.dump(payload, f, indent=2, sort_keys=True, allow_nan=False)
        f.write("\n")


def read_csv(path):
    """Header and (rows, columns) array of a file written by :func:`write_csv`."""
    with open(path, encoding="utf-8") as f:
        header = f.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return header, data
