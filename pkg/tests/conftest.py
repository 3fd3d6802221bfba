import sys

import pytest

from padiclab import cache


@pytest.fixture(autouse=True, scope="session")
def _memory_cache_only():
    cache.configure(None)
    yield


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance lines (one per criterion) after the test run."""
    module = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
