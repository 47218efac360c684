import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from numeric_field import FieldSpec
from series_ring import MSeries, Series

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def Q():
    return FieldSpec.rationals()


@pytest.fixture(params=[2, 3, 5, 7])
def prime_field(request):
    return FieldSpec.prime_field(request.param)


@pytest.fixture
def poly(Q):
    """poly({exponent: coefficient}, precision=None) over Q"""
    def make(terms, precision=None, spec=None):
        return Series.from_terms(spec or Q, terms, precision)
    return make


@pytest.fixture
def mpoly(Q):
    """mpoly({(a, b): coefficient}) in two variables over Q"""
    def make(terms, num_vars=2, precision=None):
        return MSeries.from_terms(Q, num_vars, terms, precision)
    return make


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
