from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from flagrank import scan  # noqa: E402


@pytest.fixture(params=scan.available_backends())
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance verdict lines, which pytest's capture would otherwise swallow."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "VERDICTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
