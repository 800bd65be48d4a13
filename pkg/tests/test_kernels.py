import random

import pytest

from qboson import _kernels
from qboson.foundations import CartanMatrix
from qboson.straighten import encode
from qboson.verify import random_word

needs_both = pytest.mark.skipif(len(_kernels.available()) < 2, reason="compiled kernels not built")


def test_backend_switching():
    before = _kernels.backend_name()
    assert _kernels.use("python").BACKEND == "python"
    assert _kernels.backend_name() == "python"
    with pytest.raises(ValueError):
        _kernels.use("fortran")
    _kernels.use(before)


@needs_both
@pytest.mark.parametrize("preset", ["A2", "B2", "G2"])
def test_straighten_and_projection_agree(preset):
    cm = CartanMatrix.preset(preset)
    sym = cm.sym_table()
    rng = random.Random(40)
    py, cy = _kernels.python_backend, _kernels.compiled_backend
    for _ in range(300):
        codes = encode(random_word(rng, 2, (-1, 0, 1, 2), rng.randint(0, 7)))
        assert py.straighten_word(codes, sym) == cy.straighten_word(codes, sym)
        assert py.p_numerator(codes, sym) == cy.p_numerator(codes, sym)


@needs_both
def test_matching_lists_agree():
    rng = random.Random(41)
    py, cy = _kernels.python_backend, _kernels.compiled_backend
    for _ in range(200):
        u = encode(random_word(rng, 2, (0, 1, 2), rng.randint(0, 4)))
        v = encode(random_word(rng, 2, (0, 1, 2), rng.randint(0, 4)))
        assert sorted(map(sorted, py.list_matchings(u, v))) == sorted(map(sorted, cy.list_matchings(u, v)))


def test_pure_python_env_switch():
    import subprocess
    import sys
    code = "from qboson import _kernels; print(_kernels.backend_name())"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={"QBOSON_PURE_PYTHON": "1", "PATH": ""}).stdout.strip()
    assert out == "python"


def test_clear_caches_is_harmless(backend):
    cm = CartanMatrix.preset("A2")
    codes = encode([(1, 0), (0, 0)])
    first = _kernels.active.straighten_word(codes, cm.sym_table())
    _kernels.clear_caches()
    assert _kernels.active.straighten_word(codes, cm.sym_table()) == first
