import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bordered_hfk import _kernels_py, kernels

try:
    from bordered_hfk import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

needs_ext = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")

vec = st.lists(st.integers(0, 5), min_size=4, max_size=4).map(tuple)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    assert (kernels.BACKEND == "cython") == (compiled is not None)


def test_pure_override():
    code = "from bordered_hfk import kernels; print(kernels.BACKEND)"
    r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                       env={"BORDERED_HFK_PURE": "1", "PATH": ""})
    assert r.stdout.strip() == "python"


def test_gf2_rank_reference():
    assert _kernels_py.gf2_rank([]) == 0
    assert _kernels_py.gf2_rank([0b11, 0b01, 0b10]) == 2
    assert _kernels_py.gf2_rank([0b100, 0b010, 0b001]) == 3


@needs_ext
@settings(max_examples=300)
@given(vec, vec, vec, st.lists(vec, max_size=4).map(tuple))
def test_product_exponents_agree(a, b, corr, killers):
    assert compiled.product_exponents(a, b, corr, killers) == _kernels_py.product_exponents(a, b, corr, killers)
    assert compiled.dominated(a, killers) == _kernels_py.dominated(a, killers)


@needs_ext
@settings(max_examples=200)
@given(st.lists(st.integers(0, 2 ** 40), max_size=30))
def test_gf2_rank_agree(rows):
    assert compiled.gf2_rank(list(rows)) == _kernels_py.gf2_rank(list(rows))


@needs_ext
def test_long_vectors_fall_back():
    a = tuple([1] * 70)
    assert compiled.product_exponents(a, a, a, ()) == tuple([3] * 70)
