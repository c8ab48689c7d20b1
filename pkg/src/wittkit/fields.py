"""Addition/multiplication tables for small finite fields F_q, q = p^k <= 128."""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .scalars import prime_power


def _polymulmod(a, b, mod, p):
    # a, b: coefficient lists (low degree first); mod: monic, degree k
    k = len(mod) - 1
    res = [0] * (2 * k)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    for d in range(len(res) - 1, k - 1, -1):
        c = res[d]
        if c:
            for i in range(k + 1):
                res[d - k + i] = (res[d - k + i] - c * mod[i]) % p
    return res[:k]


def _is_irreducible(mod, p):
    k = len(mod) - 1
    # brute force: no monic factor of degree 1..k//2
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            f = list(tail) + [1]
            # polynomial remainder of mod by f
            r = list(mod)
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    for j in range(d + 1):
                        r[i - d + j] = (r[i - d + j] - c * f[j]) % p
            if not any(r[:d]):
                return False
    return True


@lru_cache(maxsize=None)
def field_tables(q: int):
    """Return ``(p, add, mul)`` int64 tables for F_q.

    Elements are encoded as integers whose base-p digits are the coefficients
    of a polynomial in a root of a fixed irreducible polynomial; the prime
    subfield is {0, ..., p-1}.
    """
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    p, k = pk
    if k == 1:
        r = np.arange(q, dtype=np.int64)
        return p, (r[:, None] + r[None, :]) % q, (r[:, None] * r[None, :]) % q
    mod = None
    for tail in product(range(p), repeat=k):
        cand = list(tail) + [1]
        if cand[0] and _is_irreducible(cand, p):
            mod = cand
            break

    def digits(x):
        return [(x // p ** i) % p for i in range(k)]

    def undigits(ds):
        return sum(d * p ** i for i, d in enumerate(ds))

    els = [digits(x) for x in range(q)]
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = undigits([(x + y) % p for x, y in zip(els[a], els[b])])
            mul[a, b] = undigits(_polymulmod(els[a], els[b], mod, p))
    return p, add, mul
