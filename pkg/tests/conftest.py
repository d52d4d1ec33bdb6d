import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from homaloidal import QQ, Ring, field_make

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("ci", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

GOLDEN = Path(__file__).parent / "golden"

SMALL_FIELDS = [QQ, field_make(2), field_make(3), field_make(5), field_make(7), field_make(32003),
                field_make(2, 2), field_make(2, 3), field_make(3, 2), field_make(5, 2)]


def field_id(F):
    return F.label()


def ring3(F):
    return Ring(F, ("x0", "x1", "x2"))


def elements(F):
    if F.kind == "Q":
        return st.integers(-10**6, 10**6)
    return st.integers(0, F.order - 1)


@st.composite
def homogeneous_polys(draw, F, max_degree=4, max_terms=6):
    R = ring3(F)
    d = draw(st.integers(1, max_degree))
    monos = R.monomials_of_degree(d)
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms, unique=True))
    f = R.zero()
    for e in chosen:
        f = f + R.monomial(e, draw(elements(F)))
    return f


@pytest.fixture(params=SMALL_FIELDS, ids=field_id)
def field(request):
    return request.param


# one PASS/FAIL line per acceptance criterion, printed after the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
