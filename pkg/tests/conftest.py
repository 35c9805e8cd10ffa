import pytest

import trilinear as tl


@pytest.fixture
def lay44():
    return tl.map_to_trilinear(tl.GridSpec(4, 4))


@pytest.fixture
def lay44_loop():
    return tl.map_to_trilinear(tl.GridSpec(4, 4), loop=True)


@pytest.fixture
def lay88():
    return tl.map_to_trilinear(tl.GridSpec(8, 8))


@pytest.fixture
def lay88_loop():
    return tl.map_to_trilinear(tl.GridSpec(8, 8), loop=True)
