import random

import pytest
from hypothesis import strategies as st

from flagpush.polyring import MultiPoly


def poly_strategy(nvars=3, max_terms=5, max_exp=3, max_coeff=6):
    exps = st.tuples(*[st.integers(0, max_exp)] * nvars)
    coeffs = st.one_of(st.integers(-max_coeff, max_coeff),
                       st.fractions(min_value=-max_coeff, max_value=max_coeff, max_denominator=5))
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: MultiPoly(nvars, d))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
