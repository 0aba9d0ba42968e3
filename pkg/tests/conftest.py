import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def star3():
    from conftalk import build_graph

    # sender 0, receiver 1 at the hub, witness 2
    return build_graph(3, [(0, 1), (1, 2)])
