"""Grid numerics: cumulative Simpson quadrature, finite-difference stencils, RK4.

Everything here works on plain numpy arrays with the grid along axis 0.
"""

import numpy as np

from .errors import InvalidInputError

#: nodes at each end handled by the one-sided boundary stencils
BOUNDARY_NODES = 2


def check_grid(t, min_nodes=2):
    t = np.asarray(t, dtype=float)
    if t.ndim != 1:
        raise InvalidInputError("grid must be one-dimensional")
    if t.size < min_nodes:
        raise InvalidInputError(f"grid needs at least {min_nodes} nodes, got {t.size}")
    if not np.all(np.isfinite(t)):
        raise InvalidInputError("grid contains non-finite values")
    bad = np.nonzero(np.diff(t) <= 0)[0]
    if bad.size:
        i = int(bad[0])
        raise InvalidInputError(f"grid not strictly increasing at index {i + 1} (t={t[i + 1]!r} after {t[i]!r})")
    return t


def is_uniform(t, rtol=1e-10):
    h = np.diff(t)
    return bool(np.all(np.abs(h - h[0]) <= rtol * abs(h[0])))


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def _half_integrals(y, x0, x1, x2):
    """Integrals of the quadratic through three nodes over each of its two intervals."""
    h0 = (x1 - x0)
    h1 = (x2 - x1)
    hs = h0 + h1
    y0, y1, y2 = y
    if y0.ndim > 1:
        h0, h1, hs = h0[:, None], h1[:, None], hs[:, None]
    first = h0 * (y0 * h1 * (2 * h0 + 3 * h1) + y1 * hs * (h0 + 3 * h1) - y2 * h0 * h0) / (6 * h1 * hs)
    second = h1 * (-y0 * h1 * h1 + y1 * hs * (3 * h0 + h1) + y2 * h0 * (3 * h0 + 2 * h1)) / (6 * h0 * hs)
    return first, second


def _cubic_interval(y, x, nodes, a, b):
    """Integral over [x[a], x[b]] of the cubic through four ``nodes``."""
    xs = x[nodes]
    c = 0.5 * (xs[0] + xs[-1])
    V = np.vander(xs - c, 4, increasing=True).T
    p = np.arange(1, 5)
    moments = ((x[b] - c) ** p - (x[a] - c) ** p) / p
    w = np.linalg.solve(V, moments)
    return np.tensordot(w, y[nodes], axes=1)


def cumulative_simpson(y, x):
    """Running integral of ``y`` over the grid ``x``, zero at ``x[0]``.

    Even-indexed nodes carry the composite Simpson sum over node pairs. An
    odd node adds the integral over its left interval, averaged between the
    parabola through its own pair and the one through the three nodes ending
    at it; the leading error terms of the two cancel, so odd and even nodes
    carry errors of the same order and the result has no even/odd sawtooth
    (which would otherwise dominate higher differences of the output). The
    first odd node and a final odd node use the cubic through the four end
    nodes instead.
    Works for non-uniform grids and for ``y`` of shape (N, ...).
    """
    x = check_grid(x, min_nodes=3)
    y = np.asarray(y, dtype=float)
    if y.shape[0] != x.size:
        raise InvalidInputError("integrand and grid lengths differ")
    n = x.size
    flat = y.reshape(n, -1)
    out = np.zeros_like(flat)

    m = (n - 1) // 2  # number of complete pairs
    if m:
        i0 = 2 * np.arange(m)
        first, second = _half_integrals((flat[i0], flat[i0 + 1], flat[i0 + 2]), x[i0], x[i0 + 1], x[i0 + 2])
        pair = first + second
        cum = np.cumsum(pair, axis=0)
        out[i0 + 2] = cum
        out[i0 + 1] = out[i0] + first
        j = np.arange(3, n - 1, 2)  # odd nodes with both neighbours' parabolas
        if j.size:
            _, back = _half_integrals((flat[j - 2], flat[j - 1], flat[j]), x[j - 2], x[j - 1], x[j])
            out[j] = out[j - 1] + 0.5 * (first[(j - 1) // 2] + back)
    if (n - 1) % 2:
        _, last = _half_integrals(
            (flat[n - 3:n - 2], flat[n - 2:n - 1], flat[n - 1:n]), x[n - 3:n - 2], x[n - 2:n - 1], x[n - 1:n]
        )
        out[n - 1] = out[n - 2] + last[0]
    if n >= 4:
        out[1] = _cubic_interval(flat, x, np.arange(4), 0, 1)
        if (n - 1) % 2:
            out[n - 1] = out[n - 2] + _cubic_interval(flat, x, np.arange(n - 4, n), n - 2, n - 1)
    return out.reshape(y.shape)


def simpson(y, x):
    return cumulative_simpson(y, x)[-1]


def hermite_eval(x, f, df, xq):
    """Cubic Hermite interpolation of nodal values and slopes at points ``xq``."""
    x = np.asarray(x, dtype=float)
    xq = np.asarray(xq, dtype=float)
    idx = np.clip(np.searchsorted(x, xq, side="right") - 1, 0, x.size - 2)
    h = x[idx + 1] - x[idx]
    s = (xq - x[idx]) / h
    h00 = (1 + 2 * s) * (1 - s) ** 2
    h10 = s * (1 - s) ** 2
    h01 = s * s * (3 - 2 * s)
    h11 = s * s * (s - 1)
    return h00 * f[idx] + h10 * h * df[idx] + h01 * f[idx + 1] + h11 * h * df[idx + 1]


def monotone_slopes(x, f, df):
    """Fritsch-Carlson limiting of Hermite slopes for increasing data.

    Slopes of smooth, well-resolved data pass through untouched; the limiter
    only acts where the cubic would overshoot.
    """
    df = np.array(df, dtype=float)
    delta = np.diff(f) / np.diff(x)
    if np.any(delta <= 0):
        raise InvalidInputError("data is not strictly increasing")
    df = np.maximum(df, 0.0)
    a = df[:-1] / delta
    b = df[1:] / delta
    r = np.hypot(a, b)
    over = r > 3.0
    if np.any(over):
        tau = np.where(over, 3.0 / np.where(over, r, 1.0), 1.0)
        # a node shared by two limited intervals keeps the smaller slope,
        # which satisfies both constraints
        df[:-1] = np.minimum(df[:-1], tau * a * delta)
        df[1:] = np.minimum(df[1:], tau * b * delta)
    return df


# ---------------------------------------------------------------------------
# finite differences
# ---------------------------------------------------------------------------

# uniform-grid weights, to be divided by h**order; end stencils are written
# for the first two nodes (offsets from node 0) and mirrored at the far end
_INTERIOR = {
    1: np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0,
    2: np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0,
}
_ENDS = {
    1: (np.array([-3.0, 4.0, -1.0]) / 2.0, np.array([-1.0, 0.0, 1.0]) / 2.0),
    2: (np.array([2.0, -5.0, 4.0, -1.0]), np.array([1.0, -2.0, 1.0, 0.0])),
}


def fd_weights(offsets, order):
    """Weights of the ``order``-th derivative from nodes at the given offsets.

    ``offsets`` has shape (M, P): M stencils of P nodes, measured from the
    evaluation point. Solves the Taylor moment system per stencil.
    """
    offsets = np.asarray(offsets, dtype=float)
    m, p = offsets.shape
    scale = np.max(np.abs(offsets), axis=1, keepdims=True)
    z = offsets / scale
    powers = np.arange(p)
    fact = np.cumprod(np.concatenate([[1.0], np.arange(1, p)]))
    vander = z[:, None, :] ** powers[None, :, None] / fact[None, :, None]
    rhs = np.zeros((m, p))
    rhs[:, order] = 1.0
    w = np.linalg.solve(vander, rhs[..., None])[..., 0]
    return w / scale ** order


def derivative(f, t, order, boundary_order=2):
    """First or second derivative of nodal data ``f`` on grid ``t``.

    Five-point central stencils at interior nodes (fourth order on uniform
    grids, third order for the second derivative on non-uniform ones). The
    two nodes at each end use a stencil made of the end block of the grid,
    second-order accurate by default; ``boundary_order=4`` widens that block
    to match the interior.
    """
    t = check_grid(t, min_nodes=5)
    f = np.asarray(f, dtype=float)
    if f.shape[0] != t.size:
        raise InvalidInputError("data and grid lengths differ")
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if boundary_order not in (2, 4):
        raise ValueError("boundary_order must be 2 or 4")
    n = t.size
    if boundary_order == 4 and n < 4 + order:
        raise InvalidInputError(f"fourth-order end stencils need at least {4 + order} nodes")
    flat = f.reshape(n, -1)
    out = np.empty_like(flat)
    width = order + boundary_order
    head = np.arange(width)
    tail = n - 1 - head
    mirror = -1.0 if order == 1 else 1.0

    if boundary_order == 2 and is_uniform(t):
        h = (t[-1] - t[0]) / (n - 1)
        scale = h ** order
        w = _INTERIOR[order]
        out[2:n - 2] = (w[0] * flat[0:n - 4] + w[1] * flat[1:n - 3] + w[2] * flat[2:n - 2]
                        + w[3] * flat[3:n - 1] + w[4] * flat[4:n]) / scale
        for i, we in enumerate(_ENDS[order]):
            out[i] = we @ flat[head] / scale
            out[n - 1 - i] = mirror * (we @ flat[tail]) / scale
        return out.reshape(f.shape)

    interior = np.arange(2, n - 2)
    idx = interior[:, None] + np.arange(-2, 3)[None, :]
    w = fd_weights(t[idx] - t[interior][:, None], order)
    out[interior] = np.einsum("mp,mpd->md", w, flat[idx])
    for i in (0, 1):
        for node, block in ((i, head), (n - 1 - i, tail)):
            we = fd_weights((t[block] - t[node])[None, :], order)[0]
            out[node] = we @ flat[block]
    return out.reshape(f.shape)


# ---------------------------------------------------------------------------
# Runge-Kutta
# ---------------------------------------------------------------------------

def rk4(f, t, y0):
    """Classic fixed-step fourth-order Runge-Kutta over the nodes of ``t``.

    ``f(t, y)`` returns dy/dt. Returns an array of shape (len(t),) + y0.shape.
    """
    t = check_grid(t)
    y = np.array(y0, dtype=float)
    out = np.empty((t.size,) + y.shape)
    out[0] = y
    for n in range(t.size - 1):
        tn, h = t[n], t[n + 1] - t[n]
        k1 = f(tn, y)
        k2 = f(tn + 0.5 * h, y + 0.5 * h * k1)
        k3 = f(tn + 0.5 * h, y + 0.5 * h * k2)
        k4 = f(tn + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[n + 1] = y
    return out
