"""Universal p-typical Witt polynomials, computed by ghost inversion over Z.

For each (p, n) this produces

* ``S[i]``, ``P[i]`` in Z[x_0..x_n, y_0..y_n] with w_i(S) = w_i(x) + w_i(y) and
  w_i(P) = w_i(x) * w_i(y);
* ``N[i]`` in Z[x_0..x_n] with w_i(N) = -w_i(x);
* ``F[i]`` (i < n) in Z[x_0..x_n] with w_i(F) = w_{i+1}(x),

where w_i(a) = sum_{j<=i} p^j a_j^(p^(i-j)). Every division by p^i must be
exact; a failure raises :class:`IntegralityError`.

Results are memoized in-process and written to a text cache (one polynomial
per line, S then P then N then F). The directory is ``$WITTKIT_CACHE`` or
``~/.cache/wittkit``.
"""
from __future__ import annotations

import os
import re
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import IntegralityError, NotDivisible
from ..poly import Poly, parse_poly, poly_sum, unpack

_MEMO: dict[tuple[int, int], "UnivPolys"] = {}
_LOCK = threading.Lock()


def xy_vars(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n + 1)) + tuple(f"y{i}" for i in range(n + 1))


def x_vars(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n + 1))


@dataclass(frozen=True)
class UnivPolys:
    p: int
    n: int
    S: tuple
    P: tuple
    N: tuple
    F: tuple

    def all_polys(self):
        return list(self.S) + list(self.P) + list(self.N) + list(self.F)

    def term_count(self) -> int:
        return sum(len(f) for f in self.all_polys())


def ghost_component(p: int, i: int, comps):
    """w_i(a) = sum_{j<=i} p^j a_j^(p^(i-j)) for ring elements or polynomials."""
    terms = [comps[j] ** (p ** (i - j)) * (p ** j) for j in range(i + 1)]
    if isinstance(terms[0], Poly):
        return poly_sum(terms)
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total


def ghost_components(p: int, comps) -> list:
    """All of w_0, ..., w_n at once; a_j^(p^k) is built as (a_j^(p^(k-1)))^p."""
    n = len(comps) - 1
    powers = []
    for a in comps:
        chain = [a]
        for _ in range(n - len(powers)):
            chain.append(chain[-1] ** p)
        powers.append(chain)
    out = []
    for i in range(n + 1):
        terms = [powers[j][i - j] * (p ** j) for j in range(i + 1)]
        if isinstance(terms[0], Poly):
            out.append(poly_sum(terms))
        else:
            total = terms[0]
            for t in terms[1:]:
                total = total + t
            out.append(total)
    return out


def invert_ghost_polys(p: int, targets: list[Poly]) -> list[Poly]:
    """Solve w_i(a) = targets[i] for a_0, ..., a_n by exact division."""
    comps: list[Poly] = []
    powers: list[Poly] = []  # powers[j] = a_j^(p^(i-j)) for the current i
    for i, g in enumerate(targets):
        parts = [g]
        for j in range(i):
            powers[j] = powers[j] ** p
            parts.append(powers[j] * (-(p ** j)))
        acc = poly_sum(parts)
        try:
            a = acc.exact_div(p ** i)
        except NotDivisible as exc:
            raise IntegralityError(f"ghost inversion not integral at index {i}: {exc}") from None
        comps.append(a)
        powers.append(a)
    return comps


def _ghosts(p, n, names, vars):
    gens = [Poly.var(v, vars) for v in names]
    return [ghost_component(p, i, gens) for i in range(n + 1)]


def build(p: int, n: int) -> UnivPolys:
    """Compute all universal polynomials for (p, n) from scratch."""
    xy = xy_vars(n)
    xs = x_vars(n)
    ys = tuple(f"y{i}" for i in range(n + 1))
    wx = _ghosts(p, n, xs, xy)
    wy = _ghosts(p, n, ys, xy)
    S = invert_ghost_polys(p, [a + b for a, b in zip(wx, wy)])
    P = invert_ghost_polys(p, [a * b for a, b in zip(wx, wy)])
    wxx = _ghosts(p, n, xs, xs)
    N = invert_ghost_polys(p, [-a for a in wxx])
    F = invert_ghost_polys(p, wxx[1:]) if n >= 1 else []
    return UnivPolys(p, n, tuple(S), tuple(P), tuple(N), tuple(F))


def verify_ghost_identities(u: UnivPolys) -> bool:
    """Recheck every defining ghost identity symbolically."""
    p, n = u.p, u.n
    xy = xy_vars(n)
    xs = x_vars(n)
    ys = tuple(f"y{i}" for i in range(n + 1))
    wx = _ghosts(p, n, xs, xy)
    wy = _ghosts(p, n, ys, xy)
    for i in range(n + 1):
        if ghost_component(p, i, list(u.S)) != wx[i] + wy[i]:
            return False
        if ghost_component(p, i, list(u.P)) != wx[i] * wy[i]:
            return False
    wxx = _ghosts(p, n, xs, xs)
    negs = [f.with_vars(xs) for f in u.N]
    for i in range(n + 1):
        if ghost_component(p, i, negs) != -wxx[i]:
            return False
    frs = [f.with_vars(xs) for f in u.F]
    for i in range(n):
        if ghost_component(p, i, frs) != wxx[i + 1]:
            return False
    return True


def is_integral(u: UnivPolys) -> bool:
    return all(isinstance(c, int) for f in u.all_polys() for c in f.coefficients())


# ---------------------------------------------------------------------------
# disk cache
# ---------------------------------------------------------------------------

def cache_dir() -> Path:
    d = os.environ.get("WITTKIT_CACHE")
    return Path(d) if d else Path.home() / ".cache" / "wittkit"


def cache_path(p: int, n: int) -> Path:
    return cache_dir() / f"witt_p{p}_n{n}.txt"


def serialize(u: UnivPolys) -> str:
    return "".join(str(f) + "\n" for f in u.all_polys())


_TERM = re.compile(r"[+-]?[^+-]+")


def _parse_canonical(line: str, vars) -> Poly:
    """Fast path for lines written by :func:`serialize`; anything unusual goes to the full parser."""
    index = {v: k for k, v in enumerate(vars)}
    terms = {}
    try:
        for tok in _TERM.findall(line):
            sign = -1 if tok[0] == "-" else 1
            coef, exps = 1, [0] * len(vars)
            for factor in tok.lstrip("+-").split("*"):
                if factor.isdigit():
                    coef *= int(factor)
                else:
                    name, _, e = factor.partition("^")
                    exps[index[name]] += int(e) if e else 1
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + sign * coef
    except (KeyError, ValueError):
        return parse_poly(line, vars)
    return Poly(vars, terms)


def deserialize(p: int, n: int, text: str) -> UnivPolys:
    lines = text.splitlines()
    if len(lines) != 4 * (n + 1) - 1:
        raise ValueError("cache file has the wrong number of lines")
    xy = xy_vars(n)
    xs = x_vars(n)
    polys = [_parse_canonical(line, xy) for line in lines]
    k = n + 1
    S, P = polys[:k], polys[k:2 * k]
    N = [f.with_vars(xs) for f in polys[2 * k:3 * k]]
    F = [f.with_vars(xs) for f in polys[3 * k:]]
    return UnivPolys(p, n, tuple(S), tuple(P), tuple(N), tuple(F))


def write_cache(u: UnivPolys) -> Path:
    path = cache_path(u.p, u.n)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(serialize(u))
    os.replace(tmp, path)
    return path


def universal(p: int, n: int, use_disk: bool = True) -> UnivPolys:
    """Memoized universal polynomials for (p, n), read from or written to disk."""
    key = (p, n)
    u = _MEMO.get(key)
    if u is not None:
        return u
    with _LOCK:
        u = _MEMO.get(key)
        if u is not None:
            return u
        path = cache_path(p, n)
        if use_disk and path.exists():
            try:
                u = deserialize(p, n, path.read_text())
            except Exception:
                u = None
        if u is None:
            u = build(p, n)
            if use_disk:
                try:
                    write_cache(u)
                except OSError:
                    pass
        _MEMO[key] = u
        return u


def clear_memo():
    _MEMO.clear()
    _ARRAYS.clear()
    _TERMS.clear()


# ---------------------------------------------------------------------------
# array form for the modular kernels
# ---------------------------------------------------------------------------

_ARRAYS: dict = {}
_TERMS: dict = {}


def poly_arrays(f: Poly, m: int | None = None):
    """(exponents, coefficients) arrays for :func:`wittkit._kernels.eval_mod`.

    Coefficients are reduced mod m when given, else returned as a Python list.
    """
    nv = f.nvars
    items = list(f._t.items())
    exps = np.array([unpack(k, nv) for k, _ in items], dtype=np.int64).reshape(len(items), nv)
    if m is None:
        return exps, [c for _, c in items]
    return exps, np.array([c % m for _, c in items], dtype=np.int64)


def family_terms(p: int, n: int, kind: str):
    """Per polynomial of a family: (exponents, integer coefficients, l1 norm, total degree)."""
    key = (p, n, kind)
    out = _TERMS.get(key)
    if out is None:
        u = universal(p, n)
        polys = {"S": u.S, "P": u.P, "N": u.N, "F": u.F}[kind]
        out = []
        for f in polys:
            exps, coefs = poly_arrays(f)
            out.append((exps, coefs, sum(abs(c) for c in coefs), f.total_degree() if f else 0))
        _TERMS[key] = out
    return out


def family_arrays(p: int, n: int, kind: str, m: int):
    key = (p, n, kind, m)
    arr = _ARRAYS.get(key)
    if arr is None:
        arr = [(exps, np.array([c % m for c in coefs], dtype=np.int64))
               for exps, coefs, _, _ in family_terms(p, n, kind)]
        _ARRAYS[key] = arr
    return arr
