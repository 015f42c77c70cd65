import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
quaternions = st.tuples(finite, finite, finite, finite).map(lambda v: np.array(v, dtype=float))
nonzero_quaternions = quaternions.filter(lambda q: np.linalg.norm(q) > 1e-6)
unit_imaginary = (
    st.tuples(finite, finite, finite)
    .filter(lambda v: np.linalg.norm(v) > 1e-3)
    .map(lambda v: np.concatenate([[0.0], np.array(v) / np.linalg.norm(v)]))
)


def as_complex_matrix(q):
    """2x2 complex matrix of q = z0 + z1 j; products of quaternions map to matrix products."""
    z0, z1 = complex(q[0], q[1]), complex(q[2], q[3])
    return np.array([[z0, z1], [-z1.conjugate(), z0.conjugate()]])


def from_complex_matrix(m):
    return np.array([m[0, 0].real, m[0, 0].imag, m[0, 1].real, m[0, 1].imag])


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


# acceptance criterion number -> (passed, title, seconds, limit, detail)
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title, secs, limit, detail = ACCEPTANCE[n]
        budget = f" (limit {limit:g} s)" if limit else ""
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  [{secs:.2f} s{budget}]"
        terminalreporter.write_line(line + (f"  {detail}" if detail else ""))
