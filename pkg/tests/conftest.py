import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from zxand import rewrite  # noqa: E402
from zxand.sampling import random_circuit, random_diagram  # noqa: E402

# every rewrite step is checked against the matrix semantics in the test build
rewrite.CHECK_STEPS = True

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(0, 2**32 - 1)


def diagrams(max_wires=3, max_vertices=10, **kw):
    return seeds.map(lambda s: random_diagram(random.Random(s), max_wires=max_wires,
                                              max_vertices=max_vertices, **kw))


def circuits(**kw):
    return seeds.map(lambda s: random_circuit(random.Random(s), **kw))


@pytest.fixture
def rng():
    return random.Random(12345)
