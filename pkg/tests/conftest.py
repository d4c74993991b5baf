import numpy as np
import pytest

from mixscale.fields import default_corpus, defect_field

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Record ``(criterion, passed, detail)``; printed in the terminal summary."""

    def log(criterion, passed, detail=""):
        _ACCEPTANCE.append((criterion, bool(passed), detail))
        return passed

    return log


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")


@pytest.fixture(scope="session")
def corpus():
    return default_corpus(n=256)


@pytest.fixture(scope="session")
def defect1024():
    return defect_field(0.05, 1024)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def standard_run():
    """Alternating sine shear, a = tau = m = 1, eight phases, stripe initial data at N = 512."""
    from mixscale.fields import stripe_field
    from mixscale.transport import ShearProtocol, simulate

    return simulate(stripe_field(1, 512), ShearProtocol(1.0, 1.0, 1), 8, kappas=(0.1,))
