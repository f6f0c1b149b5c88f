import random

import pytest
from hypothesis import settings, strategies as st

from wnlie.arith import Poly, monomials_up_to
from wnlie.deriv import Deriv
from wnlie.sampling import DEFAULT_SEED

settings.register_profile("wnlie", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("wnlie")

COEFFS = st.integers(-5, 5)


def polys(n: int, max_degree: int = 3):
    monos = monomials_up_to(n, max_degree)
    return st.dictionaries(st.sampled_from(monos), COEFFS, max_size=6).map(lambda t: Poly(n, t))


def derivs(n: int, max_degree: int = 3):
    return st.tuples(*[polys(n, max_degree) for _ in range(n)]).map(lambda cs: Deriv(list(cs)))


@pytest.fixture
def rng():
    return random.Random(DEFAULT_SEED)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
