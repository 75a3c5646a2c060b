import pytest
from hypothesis import settings, strategies as st

from geotraj.linalg import Rational
from geotraj.minkowski import MINKOWSKI, Metric
from geotraj.phase import Geodesic

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def rationals(num=20, den=10):
    return st.builds(Rational, st.integers(-num, num), st.integers(1, den))


def positive_rationals(num=20, den=10):
    return st.builds(Rational, st.integers(1, num), st.integers(1, den))


def vectors(n, **kw):
    return st.tuples(*[rationals(**kw)] * n)


def nonzero_vectors(n, **kw):
    return vectors(n, **kw).filter(any)


def geodesics(g: Metric = MINKOWSKI):
    return st.builds(Geodesic, vectors(g.n), nonzero_vectors(g.n))


def Q(*xs):
    """Shorthand for exact vectors: Q(1, "1/2") -> (1, 1/2)."""
    return tuple(Rational(x) for x in xs)


@pytest.fixture
def g():
    return MINKOWSKI


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
