import pytest

from qboson import _kernels
from qboson.foundations import CartanMatrix


@pytest.fixture
def a2():
    return CartanMatrix.preset("A2")


@pytest.fixture
def b2():
    return CartanMatrix.preset("B2")


@pytest.fixture
def sl2():
    return CartanMatrix.preset("SL2")


@pytest.fixture(params=["A2", "B2"])
def rank2(request):
    return CartanMatrix.preset(request.param)


@pytest.fixture(params=_kernels.available())
def backend(request):
    """Run the test once per importable kernel backend."""
    previous = _kernels.backend_name()
    _kernels.use(request.param)
    _kernels.clear_caches()
    yield request.param
    _kernels.use(previous)
    _kernels.clear_caches()

