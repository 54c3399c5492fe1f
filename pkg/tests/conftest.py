import pytest
from hypothesis import HealthCheck, settings, strategies as st

from ncfilt import MultiPoly, WordPoly, straighten

settings.register_profile(
    "ncfilt", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("ncfilt")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_lines():
    return ACCEPTANCE_LINES


small = st.integers(-3, 3)


@st.composite
def words(draw, n, max_len=3, max_terms=4):
    terms = draw(st.dictionaries(
        st.lists(st.integers(0, n - 1), max_size=max_len).map(tuple), small, max_size=max_terms))
    return WordPoly(n, terms)


@st.composite
def normal_forms(draw, n, d, max_len=3):
    return straighten(draw(words(n, max_len)), d)


@st.composite
def polys(draw, n, max_deg=3, max_terms=4):
    exps = st.lists(st.integers(0, max_deg), min_size=n, max_size=n).map(tuple)
    terms = draw(st.dictionaries(exps, st.fractions(-4, 4, max_denominator=3), max_size=max_terms))
    return MultiPoly(n, {e: c for e, c in terms.items()})
