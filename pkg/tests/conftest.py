import math

import numpy as np
import pytest
from scipy import integrate


def adaptive_weighted_integral(f, rho, tol=1e-10):
    """Brute-force oracle for ``int f rho`` over R, split at zero.

    Independent of every transform in the package: scipy's QUADPACK on each
    half line.
    """
    def integrand(x):
        return f(x) * rho(x)

    left, _ = integrate.quad(integrand, -np.inf, 0.0, epsabs=0.0, epsrel=tol, limit=500)
    right, _ = integrate.quad(integrand, 0.0, np.inf, epsabs=0.0, epsrel=tol, limit=500)
    return left + right


def abs_pow(p):
    return lambda x: np.abs(x) ** p


@pytest.fixture
def oracle():
    return adaptive_weighted_integral


def scalar_gaussian(x):
    return math.exp(-x * x / 2) / math.sqrt(2 * math.pi)


def scalar_logistic(x):
    e = math.exp(-abs(x))
    return e / (1 + e) ** 2


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
