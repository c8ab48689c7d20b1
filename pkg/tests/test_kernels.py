"""The numba and numpy kernels agree with each other and with plain Python."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittkit import _kernels, count_points, free_ring, mod_fiber
from wittkit.jets import JetCtx, jet_presentation
from wittkit.rings import presented_ring
from wittkit.scalars import ZZ
from wittkit.witt.vectors import univ_batch_int, univ_batch_mod

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])


def eval_python(exps, coefs, values, m):
    out = []
    for row in values:
        s = 0
        for e, c in zip(exps, coefs):
            t = int(c)
            for x, k in zip(row, e):
                t = t * pow(int(x), int(k), m) % m
            s = (s + t) % m
        out.append(s % m)
    return out


@pytest.mark.parametrize("backend", BACKENDS)
@given(m=st.one_of(st.integers(2, 100), st.integers(2, _kernels.MAX_MODULUS - 1)),
       seed=st.integers(0, 2**32 - 1))
def test_eval_mod_matches_python(backend, m, seed):
    rng = np.random.default_rng(seed)
    exps = rng.integers(0, 6, size=(5, 3))
    coefs = rng.integers(-10**6, 10**6, size=5)
    values = rng.integers(0, 2**62, size=(7, 3)) % m
    got = _kernels.eval_mod(exps, coefs, values, m, backend=backend)
    assert list(map(int, got)) == eval_python(exps, coefs % m, values, m)


def test_eval_mod_rejects_huge_modulus():
    with pytest.raises(ValueError):
        _kernels.eval_mod(np.zeros((1, 1)), np.ones(1), np.ones((1, 1)), _kernels.MAX_MODULUS)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="numba not installed")
@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (5, 1)])
def test_backends_agree_on_universal_batches(p, n):
    rng = np.random.default_rng(p * 10 + n)
    pts = rng.integers(0, 8, size=(300, 2 * (n + 1)))
    for kind in ("S", "P"):
        a = univ_batch_mod(p, n, kind, 8, pts, backend="numpy")
        b = univ_batch_mod(p, n, kind, 8, pts, backend="numba")
        assert np.array_equal(a, b)
    rows = rng.integers(-30, 30, size=(40, 2 * (n + 1))).tolist()
    assert univ_batch_int(p, n, "P", rows, backend="numpy") == univ_batch_int(p, n, "P", rows, backend="numba")


@pytest.mark.parametrize("q", [2, 3, 4, 8, 9])
def test_count_points_backends_agree(q):
    A = presented_ring(ZZ, ["x", "y"], ["x^2-y^3+1"])
    counts = {b: count_points(A, q, backend=b) for b in BACKENDS}
    assert len(set(counts.values())) == 1
    J = mod_fiber(jet_presentation(JetCtx(2, 1, free_ring("x"))).ring, 2)
    assert {count_points(J, q, backend=b) for b in BACKENDS} == {count_points(J, q, backend="numpy")}


def test_env_flag_disables_numba():
    env = dict(os.environ, WITTKIT_NO_NUMBA="1")
    code = "from wittkit import _kernels; print(_kernels.HAVE_NUMBA, _kernels.BACKEND)"
    r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert r.stdout.split() == ["False", "numpy"]
