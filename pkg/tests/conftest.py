import math
import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from entbasis.basis import builtin_basis

THETAS = [0.0, math.pi / 8, math.pi / 4, 1.0, 2.0]
LAMBDAS = [0.5, 1.0, 2.0, 5.0]


def family_grid():
    """(family, kwargs) pairs used throughout: bell plus every family at the reference parameters."""
    out = [("bell", {})]
    for fam in ("phase", "rotation", "hyperbolic"):
        out += [(fam, {"theta": t}) for t in THETAS]
    out += [("scale", {"lam": v}) for v in LAMBDAS]
    return out


def grid_bases():
    return [builtin_basis(f, **kw) for f, kw in family_grid()]


def random_qubit(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def random_unitary(rng, n=2):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
complex_entries = st.builds(complex, finite, finite)
mat2 = st.lists(complex_entries, min_size=4, max_size=4).map(lambda xs: np.array(xs).reshape(2, 2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
