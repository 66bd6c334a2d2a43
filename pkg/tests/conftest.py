import numpy as np
import pytest

P = 257


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def c3_model():
    from conetract.lab.model import build_model
    from conetract.lattice import catalog_entry

    return build_model(catalog_entry("C_3").cls, 257, seed=0, name="C_3")


@pytest.fixture(scope="session")
def c3_report(c3_model):
    from conetract.lab.report import full_analysis

    return full_analysis(c3_model, threads=2)


ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion, then assert it."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE.append(line)
        print(line)
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
