"""Exact linear algebra over Z, Q and F_p (sympy matrices underneath)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from sympy import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix


def _dm(rows: Sequence[Sequence[int]], ncols: int | None = None, dom=ZZ) -> DomainMatrix:
    rows = [list(r) for r in rows]
    nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return DomainMatrix([[dom(int(c)) for c in r] for r in rows], (len(rows), nc), dom)


def int_det(rows) -> int:
    if not rows:
        return 1
    return int(_dm(rows).det())


def rank_q(rows, ncols: int | None = None) -> int:
    if not rows:
        return 0
    return _dm(rows, ncols).convert_to(QQ).rank()


def rank_mod_p(rows, p: int, ncols: int | None = None) -> int:
    if not rows:
        return 0
    return _dm([[c % p for c in r] for r in rows], ncols).convert_to(GF(p)).rank()


def nullspace_mod_p(rows, p: int, ncols: int) -> list[list[int]]:
    """Basis of {v in F_p^ncols : M v = 0}."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    K = _dm([[c % p for c in r] for r in rows], ncols).convert_to(GF(p)).nullspace()
    return [[int(GF(p).to_int(c)) % p for c in row] for row in K.to_Matrix().tolist()] if K.shape[0] else []


def integer_kernel(rows, ncols: int) -> list[list[int]]:
    """A Z-basis of {v in Z^ncols : M v = 0}, via unimodular column reduction."""
    m = len(rows)
    # columns of [M; I], reduced by integer column operations
    cols = [[int(rows[i][j]) for i in range(m)] + [int(j == k) for k in range(ncols)] for j in range(ncols)]
    r = 0
    for i in range(m):
        active = list(range(r, ncols))
        while True:
            nz = [j for j in active if cols[j][i]]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda j: abs(cols[j][i]))
            for j in nz:
                if j != piv:
                    q = cols[j][i] // cols[piv][i]
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[piv])]
        nz = [j for j in active if cols[j][i]]
        if nz:
            j = nz[0]
            cols[r], cols[j] = cols[j], cols[r]
            r += 1
    basis = [c[m:] for c in cols[r:]]
    return [_primitive(v) for v in basis]


def _primitive(v):
    g = 0
    for c in v:
        g = gcd(g, c)
    if g > 1:
        v = [c // g for c in v]
    for c in v:
        if c:
            return v if c > 0 else [-x for x in v]
    return v


def clear_denominators(v: Sequence[Fraction]) -> list[int]:
    d = 1
    for c in v:
        d = lcm(d, Fraction(c).denominator)
    return [int(Fraction(c) * d) for c in v]
