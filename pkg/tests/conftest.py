from __future__ import annotations

import pytest

from lipstab.instances import bundled, random_instance

ACCEPTANCE_SEED = 7
RANDOM_SEEDS = range(20)

# criterion number -> (passed, message); filled in by test_acceptance.py
ACCEPTANCE_RESULTS: dict = {}


@pytest.fixture(scope="session")
def inst_a():
    return bundled("instanceA")


@pytest.fixture(scope="session")
def inst_b():
    return bundled("instanceB")


@pytest.fixture(scope="session")
def inst_c():
    return bundled("instanceC")


@pytest.fixture(scope="session")
def inst_zero():
    return bundled("instanceZero")


@pytest.fixture(scope="session")
def random_instances():
    return [random_instance(s) for s in RANDOM_SEEDS]


@pytest.fixture(scope="session")
def all_instances(inst_a, inst_b, inst_c, random_instances):
    return [("instanceA", inst_a), ("instanceB", inst_b), ("instanceC", inst_c)] + [
        (f"random{s}", inst) for s, inst in zip(RANDOM_SEEDS, random_instances)
    ]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, msg = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {msg}")
