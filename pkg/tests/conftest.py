import random

import pytest

from fospectra._kernels import BACKENDS

SEED = 20240601


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(SEED)


# acceptance criterion number -> "pass" / "fail", filled in by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {k}: {ACCEPTANCE[k]}")
