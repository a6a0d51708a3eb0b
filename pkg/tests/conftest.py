from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings

from koszul import corpus
from koszul.linalg import Field

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

QQ = Field()
GF5 = Field(5)


@pytest.fixture
def rng():
    return random.Random(12345)


def alg(name):
    return corpus.load(name).algebra


# acceptance gate: one line per criterion, printed at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:>2}. {title}: {detail}")
