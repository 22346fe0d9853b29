import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

TAGS = ("SplitRR", "ComplexC")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_hermitian(tag, n, rng, scale=1.0):
    from kloosterman_lab.algebra import HermitianMatrix
    return HermitianMatrix.from_chart(tag, n, scale * rng.standard_normal(n * n))


ACCEPTANCE = {}


def record(number, ok, detail):
    ACCEPTANCE[number] = (bool(ok), detail)
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
