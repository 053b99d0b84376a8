import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lieeig import _kernels
from lieeig.fields import GF
from lieeig.linalg import Matrix, char_poly, _berkowitz_generic

from . import oracles

BACKENDS = _kernels.available_backends()
PRIMES = [2, 3, 5, 7, 101, 65521, 2147483647]


@st.composite
def mod_matrices(draw, square=True):
    p = draw(st.sampled_from(PRIMES))
    n = draw(st.integers(1, 7))
    m = n if square else draw(st.integers(1, 7))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=n * m, max_size=n * m))
    return p, np.array(vals, dtype=np.int64).reshape(n, m)


@given(mod_matrices(square=False))
def test_rref_backends_agree(data):
    p, a = data
    outs = [_kernels.rref_modp(a, p, backend=b) for b in BACKENDS]
    for r, piv in outs[1:]:
        assert np.array_equal(r, outs[0][0]) and np.array_equal(piv, outs[0][1])
    r, piv = outs[0]
    assert len(piv) == a.shape[1] - oracles.nullity(a.tolist(), p)


@given(mod_matrices(), mod_matrices())
def test_matmul_backends_agree(d1, d2):
    p, a = d1
    _, b = d2
    b = b[: a.shape[1], : a.shape[1]] % p
    if b.shape[0] != a.shape[1]:
        return
    ref = oracles.matmul(a.tolist(), b.tolist(), p)
    for be in BACKENDS:
        assert _kernels.matmul_modp(a, b, p, backend=be).tolist() == ref


@given(mod_matrices())
def test_charpoly_backends_agree_with_generic(data):
    p, a = data
    outs = [_kernels.charpoly_modp(a, p, backend=b).tolist() for b in BACKENDS]
    assert all(o == outs[0] for o in outs)
    F = GF(p)
    A = Matrix(F, [[F(int(x)) for x in r] for r in a])
    assert [c.v for c in _berkowitz_generic(A)] == outs[0]
    if p > a.shape[0]:
        assert outs[0] == oracles.charpoly_interpolation(a.tolist(), p)


def test_char_poly_routes_through_kernel():
    F = GF(7)
    A = Matrix(F, [[F(1), F(2)], [F(3), F(4)]])
    assert [c.v for c in char_poly(A).c] == _kernels.charpoly_modp([[1, 2], [3, 4]], 7).tolist()


def test_large_prime_no_overflow():
    p = 2147483647
    a = np.full((6, 6), p - 1, dtype=np.int64)
    for be in BACKENDS:
        assert _kernels.matmul_modp(a, a, p, backend=be).tolist() == oracles.matmul(a.tolist(), a.tolist(), p)


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, LIEEIG_DISABLE_NUMBA="1")
    code = "from lieeig import _kernels; print(_kernels.BACKEND, _kernels.HAVE_NUMBA)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "False"]


@pytest.mark.skipif("numba" not in BACKENDS, reason="numba not installed")
def test_default_backend_is_numba():
    assert _kernels.BACKEND == "numba" or os.environ.get("LIEEIG_DISABLE_NUMBA")
