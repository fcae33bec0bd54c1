import os

import mpmath
import pytest

from seczeta.kernel import PrecisionContext

LARGE = os.environ.get("SECZETA_LARGE") == "1"

large = pytest.mark.skipif(not LARGE, reason="large tier; set SECZETA_LARGE=1")


@pytest.fixture
def ctx50():
    return PrecisionContext(50)


@pytest.fixture(autouse=True)
def _fresh_mp():
    # library calls must not depend on, or leak into, the global precision
    mpmath.mp.dps = 15
    yield
    assert mpmath.mp.dps == 15


def decimals_equal(a, b):
    """Leading decimals after the point shared by a and b."""
    from seczeta.zeros import matching_decimals

    with mpmath.workdps(max(60, mpmath.mp.dps)):
        return matching_decimals(mpmath.mpf(a), mpmath.mpf(b))


def sig_digits(x, ref):
    x, ref = mpmath.mpf(x), mpmath.mpf(ref)
    if x == ref:
        return 10_000
    return float(-mpmath.log10(abs(x - ref) / abs(ref)))


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
