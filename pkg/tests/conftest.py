import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: list[str] = []


@pytest.fixture(scope="session")
def criterion_log():
    """Append ``PASS``/``FAIL`` lines shown in the terminal summary."""

    def log(number, name, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2} {name}: {detail}"
        _CRITERIA.append(line)
        print(line)
        return ok

    return log


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
