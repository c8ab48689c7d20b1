"""Independent reference computations, written directly against sympy.

Nothing here imports wittkit; the tests compare the package against these.
"""
from __future__ import annotations

import sympy as sp


def ghost_int(p, comps):
    """Ghost components of an integer Witt vector, straight from the formula."""
    return [sum(p ** j * comps[j] ** (p ** (i - j)) for j in range(i + 1)) for i in range(len(comps))]


def from_ghost_int(p, ghosts):
    """Witt components from integer ghost components, or None when not in the image."""
    comps = []
    for i, w in enumerate(ghosts):
        rest = w - sum(p ** j * comps[j] ** (p ** (i - j)) for j in range(i))
        if rest % p ** i:
            return None
        comps.append(rest // p ** i)
    return comps


def universal_sympy(p, n, op):
    """S_i or P_i over Q by solving the ghost equations one index at a time."""
    X = sp.symbols(f"x0:{n + 1}")
    Y = sp.symbols(f"y0:{n + 1}")

    def gh(v, i):
        return sum(p ** j * v[j] ** (p ** (i - j)) for j in range(i + 1))

    out = []
    for i in range(n + 1):
        target = gh(X, i) + gh(Y, i) if op == "S" else gh(X, i) * gh(Y, i)
        lower = sum(p ** j * out[j] ** (p ** (i - j)) for j in range(i))
        out.append(sp.expand((target - lower) / sp.Integer(p) ** i))
    return out, X, Y


def sympy_poly_text(expr):
    return str(sp.expand(expr)).replace("**", "^")


def to_sympy(text, names):
    syms = {v: sp.Symbol(v) for v in names}
    return sp.expand(sp.sympify(text.replace("^", "**"), locals=syms))


def delta_sympy(expr, p, jets):
    """δ of a polynomial in the jet symbols; ``jets`` lists (x, δx, δ²x, ...) per variable."""
    sub = {}
    for chain in jets:
        for j in range(len(chain) - 1):
            sub[chain[j]] = chain[j] ** p + p * chain[j + 1]
    phi = expr.xreplace(sub)
    return sp.expand((sp.expand(phi) - sp.expand(expr ** p)) / p)


def socle_dim_brute(p, n):
    """dim of the socle of F_p ⊗ Z[x_1..x_n]/(x_i x_j - p^min(i,j) x_max(i,j)), by exhaustive search.

    Elements are a_0 + Σ a_i x_i; the socle is everything killed by every x_k.
    Returns log_p of the number of such elements.
    """
    from itertools import product

    def times_x(k, a):
        out = [0] * (n + 1)
        out[k] += a[0]
        for i in range(1, n + 1):
            out[max(i, k)] += p ** min(i, k) * a[i]
        return [c % p for c in out]

    count = sum(1 for a in product(range(p), repeat=n + 1)
                if all(not any(times_x(k, list(a))) for k in range(1, n + 1)))
    dim = 0
    while p ** dim < count:
        dim += 1
    assert p ** dim == count
    return dim
