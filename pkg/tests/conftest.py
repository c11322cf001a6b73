import functools

import pytest
from hypothesis import HealthCheck, settings

from gradedhom.exact_linalg import Field
from gradedhom.fixtures import build as _build

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GF = Field.prime(101)
QQ = Field.rationals()


@functools.lru_cache(maxsize=None)
def algebra(name: str, field: Field = GF, dmax: int = 8):
    """Cached corpus algebra; tests must not mutate it."""
    return _build(name, field, dmax)


@pytest.fixture(params=[QQ, GF], ids=["QQ", "GF101"])
def field(request):
    return request.param
