"""Cross-checks between the pure-Python and compiled kernels."""

import os
import subprocess
import sys

import pytest

from ruminalg import _poly_kernel as pure
from ruminalg.forms import random_poly
from ruminalg.prng import stream

try:
    from ruminalg import _poly_kernel_c as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernel not built")


def _random_dicts(count, nvars=5, max_degree=3, seed=123):
    rng = stream(seed, 0)
    return [random_poly(rng, nvars, max_degree).terms for _ in range(count)]


@needs_compiled
def test_poly_ops_agree():
    dicts = _random_dicts(60)
    for a, b in zip(dicts, dicts[1:]):
        assert pure.poly_add(a, b) == compiled.poly_add(a, b)
        assert pure.poly_sub(a, b) == compiled.poly_sub(a, b)
        assert pure.poly_mul(a, b) == compiled.poly_mul(a, b)
        assert pure.poly_neg(a) == compiled.poly_neg(a)
        for var in range(5):
            assert pure.poly_deriv(a, var) == compiled.poly_deriv(a, var)


@needs_compiled
def test_merge_indices_agree():
    cases = [
        ((0, 2), (1,)),
        ((1,), (0, 2)),
        ((0, 1), (1, 2)),  # collision
        ((), (0, 1, 2)),
        ((3, 4), (0, 1, 2)),
    ]
    for i, j in cases:
        assert pure.merge_indices(i, j) == compiled.merge_indices(i, j)


@needs_compiled
def test_wedge_terms_agree():
    rng = stream(9, 4)
    for _ in range(30):
        ta = {(0, 1): random_poly(rng, 5, 2).terms, (2,) if rng.chance(1, 2) else (3,): random_poly(rng, 5, 2).terms}
        tb = {(2, 4): random_poly(rng, 5, 2).terms, (1,): random_poly(rng, 5, 2).terms}
        assert pure.wedge_terms(ta, tb) == compiled.wedge_terms(ta, tb)


def test_merge_indices_sign():
    assert pure.merge_indices((1,), (0,)) == (-1, (0, 1))
    assert pure.merge_indices((0,), (1,)) == (1, (0, 1))
    assert pure.merge_indices((0, 1), (1,)) == (0, ())
    assert pure.merge_indices((2, 3), (0, 1)) == (1, (0, 1, 2, 3))


def test_env_var_forces_pure_kernel():
    code = "from ruminalg.poly import kernel_name; print(kernel_name())"
    env = dict(os.environ, RUMINALG_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "pure-python"
