import numpy as np
import pytest

from pcerod.basis import PolynomialFamily, build_basis
from pcerod.fit import ChaosExpansion


def make_expansion(n, p, coefs, family=None, outputs=("u",)):
    """Single-output, single-time expansion from ``{multi_index: coefficient}``."""
    basis = build_basis(family or PolynomialFamily.legendre(), n, p)
    c = np.zeros((len(outputs), 1, len(basis)))
    for idx, v in coefs.items():
        c[0, 0, basis.position(idx)] = v
    return ChaosExpansion(basis, tuple(outputs), np.array([0.0]), c)


@pytest.fixture
def legendre():
    return PolynomialFamily.legendre()


# one summary line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
