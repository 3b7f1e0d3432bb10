import pytest
from hypothesis import HealthCheck, settings

from ribbonx import reps as R
from ribbonx.catalog import doubled_nichols, nichols, sweedler_h4, z2
from ribbonx.ribbon_ext import ribbon_extension

settings.register_profile(
    "ribbonx", derandomize=True, deadline=None, max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ribbonx")


@pytest.fixture(scope="session")
def k1():
    return nichols(1)


@pytest.fixture(scope="session")
def h4():
    return sweedler_h4()


@pytest.fixture(scope="session")
def zz():
    return z2()


@pytest.fixture(scope="session")
def dk1():
    return doubled_nichols(1)


@pytest.fixture(scope="session")
def dk2():
    return doubled_nichols(2)


@pytest.fixture(scope="session")
def ext1(dk1):
    return ribbon_extension(dk1)


@pytest.fixture(scope="session")
def named1(ext1):
    return R.dkn_modules(1, ext1)


@pytest.fixture(scope="session")
def base1(named1):
    return R.dkn_base_modules(named1)


@pytest.fixture(scope="session")
def fusion1(named1):
    return R.fusion_table(named1)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid and rep.when == "call":
                name = nodeid.split("::test_")[-1]
                lines.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name, verdict in sorted(lines):
            terminalreporter.write_line(f"{name}: {verdict}")
