import math

import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

ALPHA = math.sqrt(0.5)

finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


def complex_matrices(dim):
    return st.tuples(arrays(np.float64, (dim, dim), elements=finite),
                     arrays(np.float64, (dim, dim), elements=finite)).map(
        lambda ri: ri[0] + 1j * ri[1])


def density_matrices(dim=4):
    def build(g):
        rho = g @ g.conj().T
        return rho / np.trace(rho).real
    return complex_matrices(dim).filter(lambda g: np.linalg.norm(g) > 1e-2).map(build)


def random_density_matrix(rng, dim=4):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_criteria = []


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.append((props["criterion"], report.outcome, props.get("detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in _criteria:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  {detail}".rstrip())
