import time
from contextlib import contextmanager

import pytest

_criterion_results = {}


@pytest.fixture
def criterion():
    """Context manager recording one acceptance criterion: marks FAIL on any
    assertion error and enforces an optional wall-clock limit in seconds."""

    @contextmanager
    def _criterion(number, limit=None):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _criterion_results[number] = False
            raise
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed > limit:
            _criterion_results[number] = False
            pytest.fail(
                f"criterion {number} exceeded its {limit:.0f}s budget: {elapsed:.2f}s"
            )
        _criterion_results[number] = True

    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not _criterion_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number in sorted(_criterion_results):
        status = "PASS" if _criterion_results[number] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}")
