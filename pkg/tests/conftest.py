import cmath
import math

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from geodist import Isometry, build_bolza, sample_in_polygon

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def disk_points(draw, rmax=0.9):
    r = draw(st.floats(0.0, rmax))
    t = draw(st.floats(0.0, 2 * math.pi))
    return r * cmath.exp(1j * t)


@st.composite
def isometries(draw, rmax=0.9):
    # translation taking 0 to p, after a rotation by theta
    p = draw(disk_points(rmax))
    theta = draw(st.floats(0.0, 2 * math.pi))
    a = cmath.exp(1j * theta / 2)
    return Isometry.normalized(a, p.conjugate() * a)


@pytest.fixture(scope="session")
def bolza2():
    return build_bolza(2)


@pytest.fixture(scope="session")
def bolza3():
    return build_bolza(3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def point_pairs(surface, n, seed):
    rng = np.random.default_rng(seed)
    return sample_in_polygon(surface.polygon, n, rng), sample_in_polygon(surface.polygon, n, rng)


# acceptance summary: one line per criterion

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    n, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    _criteria[n] = (title, rep.outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, outcome, detail = _criteria[n]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {title}" + (f"  [{detail}]" if detail else ""))
