import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from rihahn.kernel import ParameterSet

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# (N, alpha, beta) regression sets
REGRESSION = [(2, Fraction(1), Fraction(1, 2)),
              (5, Fraction(1, 3), Fraction(2, 5)),
              (8, Fraction(7, 2), Fraction(-1, 3)),
              (12, Fraction(5, 7), Fraction(9, 4))]
SMALL = [(2, Fraction(1), Fraction(1, 2)),
         (3, Fraction(1, 3), Fraction(2, 5)),
         (4, Fraction(3, 2), Fraction(-1, 3))]


def pset(N, alpha, beta):
    return ParameterSet(alpha, beta, N)


@pytest.fixture
def p2():
    return ParameterSet(1, Fraction(1, 2), 2)


@pytest.fixture(params=SMALL, ids=lambda t: f"N{t[0]}")
def small(request):
    return pset(*request.param)


@pytest.fixture(params=REGRESSION, ids=lambda t: f"N{t[0]}")
def regression(request):
    return pset(*request.param)
