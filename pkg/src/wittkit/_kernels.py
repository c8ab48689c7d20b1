"""Hot numeric loops: brute-force point counting and batched evaluation mod m.

Each kernel has a numba ``@njit`` version and a pure-numpy version with the
same signature. Set ``WITTKIT_NO_NUMBA=1`` to force the numpy path; it is also
used automatically when numba is not importable.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("WITTKIT_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("numba disabled by WITTKIT_NO_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

_CHUNK = 1 << 16


# ---------------------------------------------------------------------------
# point counting over F_q
# ---------------------------------------------------------------------------

def _power_table(mul, q, maxexp):
    pw = np.zeros((q, maxexp + 1), dtype=np.int64)
    pw[:, 0] = 1 if q > 1 else 0
    for e in range(1, maxexp + 1):
        pw[:, e] = mul[np.arange(q), pw[:, e - 1]]
    return pw


def count_zeros_numpy(q, add, mul, nvars, exps, coefs, offsets):
    """Number of points of F_q^nvars where every relation vanishes.

    Relation r consists of terms ``offsets[r]:offsets[r+1]`` of ``exps``
    (term x variable exponents) and ``coefs`` (field elements).
    """
    maxexp = int(exps.max()) if exps.size else 0
    pw = _power_table(mul, q, maxexp)
    total = q ** nvars
    nrel = len(offsets) - 1
    count = 0
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        X = np.empty((idx.size, nvars), dtype=np.int64)
        rest = idx.copy()
        for v in range(nvars - 1, -1, -1):
            X[:, v] = rest % q
            rest //= q
        ok = np.ones(idx.size, dtype=bool)
        for r in range(nrel):
            acc = np.zeros(idx.size, dtype=np.int64)
            for t in range(offsets[r], offsets[r + 1]):
                val = np.full(idx.size, coefs[t], dtype=np.int64)
                for v in range(nvars):
                    e = exps[t, v]
                    if e:
                        val = mul[val, pw[X[:, v], e]]
                acc = add[acc, val]
            ok &= acc == 0
        count += int(ok.sum())
    return count


MAX_MODULUS = 1 << 50


def _mulmod_np(a, b, m, minv):
    # a*b mod m for 0 <= a, b < m < 2**50: float estimate of the quotient,
    # exact correction in wrapping int64 arithmetic
    q = np.floor(a.astype(np.float64) * b.astype(np.float64) * minv).astype(np.int64)
    with np.errstate(over="ignore"):
        r = a * b - q * m
    r = np.where(r < 0, r + m, r)
    r = np.where(r < 0, r + m, r)
    r = np.where(r >= m, r - m, r)
    return np.where(r >= m, r - m, r)


def eval_mod_numpy(exps, coefs, values, m):
    """Evaluate one polynomial at many points modulo m.

    ``exps``: (T, V) exponents, ``coefs``: (T,) residues, ``values``: (N, V)
    residues. Returns (N,) residues. Requires m < 2**50.
    """
    N, V = values.shape
    T = exps.shape[0]
    out = np.zeros(N, dtype=np.int64)
    if T == 0:
        return out
    minv = 1.0 / m
    maxexp = int(exps.max())
    pw = np.ones((N, V, maxexp + 1), dtype=np.int64) % m
    for e in range(1, maxexp + 1):
        pw[:, :, e] = _mulmod_np(pw[:, :, e - 1], values, m, minv)
    step = max(1, (1 << 22) // max(N, 1))
    for s in range(0, T, step):
        ex = exps[s:s + step]
        acc = np.broadcast_to(coefs[s:s + step] % m, (N, ex.shape[0])).copy()
        for v in range(V):
            used = ex[:, v] > 0
            if used.any():
                acc[:, used] = _mulmod_np(acc[:, used], pw[:, v, :][:, ex[used, v]], m, minv)
        out = (out + acc.sum(axis=1) % m) % m
    return out


if HAVE_NUMBA:
    @njit(cache=True)
    def count_zeros_numba(q, add, mul, nvars, exps, coefs, offsets):
        maxexp = 0
        for t in range(exps.shape[0]):
            for v in range(nvars):
                if exps[t, v] > maxexp:
                    maxexp = exps[t, v]
        pw = np.zeros((q, maxexp + 1), dtype=np.int64)
        for a in range(q):
            pw[a, 0] = 1 if q > 1 else 0
            for e in range(1, maxexp + 1):
                pw[a, e] = mul[a, pw[a, e - 1]]
        total = 1
        for _ in range(nvars):
            total *= q
        nrel = offsets.shape[0] - 1
        x = np.zeros(nvars, dtype=np.int64)
        count = 0
        for idx in range(total):
            rest = idx
            for v in range(nvars - 1, -1, -1):
                x[v] = rest % q
                rest //= q
            good = True
            for r in range(nrel):
                acc = 0
                for t in range(offsets[r], offsets[r + 1]):
                    val = coefs[t]
                    for v in range(nvars):
                        e = exps[t, v]
                        if e:
                            val = mul[val, pw[x[v], e]]
                    acc = add[acc, val]
                if acc != 0:
                    good = False
                    break
            if good:
                count += 1
        return count

    @njit(cache=True, inline="always")
    def _mulmod(a, b, m, minv):
        q = np.int64(float(a) * float(b) * minv)
        r = a * b - q * m
        while r < 0:
            r += m
        while r >= m:
            r -= m
        return r

    @njit(cache=True)
    def eval_mod_numba(exps, coefs, values, m):
        N, V = values.shape
        T = exps.shape[0]
        out = np.zeros(N, dtype=np.int64)
        minv = 1.0 / m
        # sparse exponent rows in compact dtypes: only the variables a term uses
        ptr = np.zeros(T + 1, dtype=np.int32)
        for t in range(T):
            c = 0
            for v in range(V):
                if exps[t, v]:
                    c += 1
            ptr[t + 1] = ptr[t] + c
        var = np.empty(ptr[T], dtype=np.int32)
        ex = np.empty(ptr[T], dtype=np.int32)
        maxexp = 0
        for t in range(T):
            k = ptr[t]
            for v in range(V):
                e = exps[t, v]
                if e:
                    var[k] = v
                    ex[k] = e
                    k += 1
                    if e > maxexp:
                        maxexp = e
        # rows go through the term list in blocks so the term data is read once per block
        B = 32
        pw = np.empty((V, maxexp + 1, B), dtype=np.int64)
        val = np.empty(B, dtype=np.int64)
        acc = np.empty(B, dtype=np.int64)
        for i0 in range(0, N, B):
            nb = min(B, N - i0)
            for v in range(V):
                for b in range(nb):
                    pw[v, 0, b] = 1 % m
                for e in range(1, maxexp + 1):
                    for b in range(nb):
                        pw[v, e, b] = _mulmod(pw[v, e - 1, b], values[i0 + b, v], m, minv)
            for b in range(nb):
                acc[b] = 0
            for t in range(T):
                c = coefs[t]
                for b in range(nb):
                    val[b] = c
                for k in range(ptr[t], ptr[t + 1]):
                    vk = var[k]
                    ek = ex[k]
                    for b in range(nb):
                        val[b] = _mulmod(val[b], pw[vk, ek, b], m, minv)
                for b in range(nb):
                    a = acc[b] + val[b]
                    acc[b] = a - m if a >= m else a
            for b in range(nb):
                out[i0 + b] = acc[b]
        return out
else:
    count_zeros_numba = None
    eval_mod_numba = None


def count_zeros(q, add, mul, nvars, exps, coefs, offsets, backend=None):
    backend = backend or BACKEND
    args = (int(q), np.ascontiguousarray(add, dtype=np.int64), np.ascontiguousarray(mul, dtype=np.int64),
            int(nvars), np.ascontiguousarray(exps, dtype=np.int64).reshape(-1, nvars) if nvars else
            np.zeros((len(coefs), 0), dtype=np.int64),
            np.ascontiguousarray(coefs, dtype=np.int64), np.ascontiguousarray(offsets, dtype=np.int64))
    if backend == "numba":
        if count_zeros_numba is None:
            raise RuntimeError("numba backend unavailable")
        return int(count_zeros_numba(*args))
    return count_zeros_numpy(*args)


def eval_mod(exps, coefs, values, m, backend=None):
    backend = backend or BACKEND
    if m >= MAX_MODULUS:
        raise ValueError("modulus too large for the int64 kernels")
    values = np.ascontiguousarray(values, dtype=np.int64) % m
    exps = np.ascontiguousarray(exps, dtype=np.int64).reshape(-1, values.shape[1])
    coefs = np.ascontiguousarray(coefs, dtype=np.int64) % m
    if backend == "numba":
        if eval_mod_numba is None:
            raise RuntimeError("numba backend unavailable")
        return eval_mod_numba(exps, coefs, values, int(m))
    return eval_mod_numpy(exps, coefs, values, int(m))
