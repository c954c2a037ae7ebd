import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from quartic_moments.poly_ring import rings  # noqa: E402


@pytest.fixture(scope="session")
def r3():
    return rings(3)


@pytest.fixture(scope="session")
def r7():
    return rings(7)


@pytest.fixture(scope="session")
def coeff_series():
    """Cached C(f, k) series for q=3, keyed by the text of f."""
    import functools

    from quartic_moments.gauss_generating import c_coeffs

    _, ext = rings(3)

    @functools.lru_cache(maxsize=None)
    def get(text, kmax=5):
        return c_coeffs(ext, ext.parse(text), kmax)

    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
