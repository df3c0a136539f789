from fractions import Fraction

import pytest
from hypothesis import strategies as st

from sympcoh.cohomology import CohomologyEngine
from sympcoh.exterior import Form, basis_blades
from sympcoh.metric import HodgeContext
from sympcoh.model import builtin_model

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def forms(draw, dim=4, degree=None):
    """A random rational form, homogeneous when ``degree`` is given."""
    degrees = [degree] if degree is not None else list(range(dim + 1))
    terms = {}
    for k in degrees:
        for blade in basis_blades(dim, k):
            if draw(st.booleans()):
                terms[blade] = draw(small_rationals)
    return Form(dim, terms)


@pytest.fixture(scope="session")
def kt():
    return builtin_model("kt")


@pytest.fixture(scope="session")
def kt_engine(kt):
    return CohomologyEngine(kt, HodgeContext(kt))


@pytest.fixture(scope="session")
def torus2_engine():
    m = builtin_model("torus2")
    return CohomologyEngine(m, HodgeContext(m))


def F(text, dim=4):
    from sympcoh.exterior import parse_form
    return parse_form(text, dim)


__all__ = ["forms", "small_rationals", "F", "Fraction"]


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in test_acceptance.summary_lines():
        terminalreporter.write_line(line)
