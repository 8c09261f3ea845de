import sys

import pytest

from mertenslab import mertens_series, sieve_both


@pytest.fixture(scope="session")
def tables_1e6():
    return sieve_both(10**6)


@pytest.fixture(scope="session")
def mobius_1e6(tables_1e6):
    return tables_1e6[0]


@pytest.fixture(scope="session")
def omega_1e6(tables_1e6):
    return tables_1e6[1]


@pytest.fixture(scope="session")
def series_1e6(mobius_1e6):
    return mertens_series(mobius_1e6)


@pytest.fixture(scope="session")
def omega_1e7():
    return sieve_both(10**7)[1]



def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=lambda k: int(k.split()[0][2:])):
        ok, detail = results[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {key}: {detail}")
