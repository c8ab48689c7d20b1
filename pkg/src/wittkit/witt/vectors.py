"""p-typical Witt vectors of finite length over a computable coefficient ring.

A coefficient ring is an :class:`~wittkit.rings.FPRing` or another
:class:`WittCtx` (giving W_m(W_n(A))). Length ``n`` means n+1 components.

Ring operations have three interchangeable evaluation routes:

``universal``
    substitute components into the cached universal polynomials;
``kernel``
    the same polynomials evaluated numerically mod m, for A = Z/m;
``lift``
    lift components to the torsion-free polynomial ring over Z (or Z[1/S])
    covering A, compute there by ghost inversion, map back. Valid because the
    universal polynomials are integral and functorial.

``method="auto"`` picks the cheapest one.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .. import _kernels
from ..errors import (CongruenceFailed, CtxMismatch, LengthError, NotDivisible, NotFlat,
                      NotInGhostImage, PresentationOnly)
from ..poly import Poly
from ..rings import FPRing, RingElem
from ..scalars import ZZ, is_prime
from .universal import (family_arrays, family_terms, ghost_component, ghost_components, invert_ghost_polys,
                        universal, x_vars, xy_vars)

METHODS = ("auto", "universal", "kernel", "lift")


@lru_cache(maxsize=None)
def integer_witt_components(p: int, n: int, c: int) -> tuple[int, ...]:
    """Witt components of the integer c in W_n(Z)."""
    comps: list[int] = []
    for i in range(n + 1):
        acc = c - sum(p ** j * comps[j] ** (p ** (i - j)) for j in range(i))
        q, r = divmod(acc, p ** i)
        assert r == 0
        comps.append(q)
    return tuple(comps)


class WittCtx:
    """The ring W_n(A) for a prime p (vectors have n+1 components)."""

    def __init__(self, p: int, n: int, ring, method: str = "auto"):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if n < 0:
            raise LengthError("n must be nonnegative")
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
        self.p = p
        self.n = n
        self.ring = ring
        self.method = method

    # -- context plumbing ---------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, WittCtx) and self.p == other.p and self.n == other.n
                and self.ring == other.ring)

    def __hash__(self):
        return hash((self.p, self.n, self.ring))

    def __repr__(self):
        return f"W_{self.n}({self.ring}) [p={self.p}]"

    __str__ = __repr__

    def with_length(self, n: int) -> "WittCtx":
        return WittCtx(self.p, n, self.ring, self.method)

    @property
    def length(self) -> int:
        return self.n + 1

    def _coerce_comp(self, c):
        R = self.ring
        if isinstance(R, WittCtx):
            return R.elem(c)
        if isinstance(c, RingElem):
            if c.ring is R or c.ring == R:
                return c
            raise CtxMismatch(f"component lives in {c.ring}, expected {R}")
        return R.elem(c)

    def vec(self, comps: Sequence) -> "WittVec":
        comps = list(comps)
        if len(comps) != self.n + 1:
            raise LengthError(f"expected {self.n + 1} components, got {len(comps)}")
        return WittVec(self, tuple(self._coerce_comp(c) for c in comps))

    def elem(self, x) -> "WittVec":
        if isinstance(x, WittVec):
            if x.ctx != self:
                raise CtxMismatch(f"{x.ctx} vs {self}")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        return self.vec(x)

    __call__ = vec

    def zero(self) -> "WittVec":
        z = self.ring.zero()
        return WittVec(self, tuple(z for _ in range(self.n + 1)))

    def one(self) -> "WittVec":
        return self.from_int(1)

    def from_int(self, c: int) -> "WittVec":
        comps = integer_witt_components(self.p, self.n, int(c))
        return WittVec(self, tuple(self.ring.from_int(a) for a in comps))

    def _check(self, *vs):
        for v in vs:
            if not isinstance(v, WittVec) or v.ctx != self:
                raise CtxMismatch(f"{getattr(v, 'ctx', v)} is not {self}")

    # -- route selection ----------------------------------------------------
    def _route(self) -> str:
        R = self.ring
        if self.method != "auto":
            if self.method in ("kernel", "lift") and not isinstance(R, FPRing):
                raise ValueError(f"method {self.method} needs an FPRing coefficient ring")
            if self.method == "kernel" and not self._kernel_ok():
                raise ValueError("kernel route needs A = Z/m with m < 2^50")
            return self.method
        if not isinstance(R, FPRing):
            return "universal"
        if self._kernel_ok():
            return "kernel"
        if not R.vars:
            return "lift"
        return "universal" if self.p ** self.n <= 9 else "lift"

    def _kernel_ok(self) -> bool:
        R = self.ring
        return (isinstance(R, FPRing) and not R.vars and R.coeff_base.kind == "mod"
                and R.coeff_base.m < _kernels.MAX_MODULUS and R.confluent)

    def _apply(self, kind: str, *vs: "WittVec", out_n: int | None = None) -> "WittVec":
        route = self._route()
        out_n = self.n if out_n is None else out_n
        target = self.with_length(out_n)
        if route == "kernel":
            return self._apply_kernel(kind, vs, target)
        if route == "lift":
            return self._apply_lift(kind, vs, target)
        u = universal(self.p, self.n)
        polys = {"S": u.S, "P": u.P, "N": u.N, "F": u.F}[kind]
        args = [c for v in vs for c in v.comps]
        R = self.ring
        if isinstance(R, FPRing):
            vals = [a.value for a in args]
            vars_ = R.vars
            out = []
            for f in polys:
                if not vars_:
                    g = f.evaluate([a.constant_value() for a in vals], one=1, from_scalar=lambda c: c)
                    out.append(R.elem(g))
                else:
                    g = f.compose(vals, vars=vars_, base=R.coeff_base)
                    out.append(RingElem(R, g))
            return WittVec(target, tuple(out))
        one = R.one()
        out = [f.evaluate(args, one=one, from_scalar=R.from_int) for f in polys]
        return WittVec(target, tuple(out))

    def _apply_kernel(self, kind, vs, target):
        R = self.ring
        m = R.coeff_base.m
        vals = np.array([[int(c.value.constant_value()) for v in vs for c in v.comps]], dtype=np.int64)
        arrs = family_arrays(self.p, self.n, kind, m)
        nv = vals.shape[1]
        out = []
        for exps, coefs in arrs:
            ex = exps[:, :nv] if exps.shape[1] >= nv else exps
            res = _kernels.eval_mod(ex, coefs, vals[:, :ex.shape[1]], m)
            out.append(R.from_int(int(res[0])))
        return WittVec(target, tuple(out))

    def _apply_lift(self, kind, vs, target):
        R: FPRing = self.ring
        p = self.p
        if R.is_free and R.coeff_base == ZZ:
            # components are their own lifts, so the (cached) ghost map applies directly
            gh = [[e.value for e in self.ghost(v).entries] for v in vs]
        else:
            gh = [ghost_components(p, [c.value.lift() for c in v.comps]) for v in vs]
        if kind == "S":
            targets = [a + b for a, b in zip(*gh)]
        elif kind == "P":
            targets = [a * b for a, b in zip(*gh)]
        elif kind == "N":
            targets = [-a for a in gh[0]]
        elif kind == "F":
            targets = gh[0][1:]
        else:
            raise ValueError(kind)
        comps = invert_ghost_polys(p, targets)
        return WittVec(target, tuple(R.elem(c.change_base(R.coeff_base)) for c in comps))

    # -- ring operations ----------------------------------------------------
    def add(self, u, v):
        self._check(u, v)
        return self._apply("S", u, v)

    def mul(self, u, v):
        self._check(u, v)
        return self._apply("P", u, v)

    def neg(self, u):
        self._check(u)
        return self._apply("N", u)

    def sub(self, u, v):
        return self.add(u, self.neg(v))

    # -- ghost map ----------------------------------------------------------
    def ghost(self, v: "WittVec") -> "GhostVec":
        self._check(v)
        if v._gh is None:
            v._gh = GhostVec(self, tuple(ghost_components(self.p, v.comps)))
        return v._gh

    def ghost_vec(self, entries) -> "GhostVec":
        entries = [self._coerce_comp(e) for e in entries]
        if len(entries) != self.n + 1:
            raise LengthError("ghost vector has the wrong length")
        return GhostVec(self, tuple(entries))

    def _divide(self, x, k):
        R = self.ring
        if isinstance(R, FPRing):
            base = R.coeff_base
            if base.kind == "mod" and base.m % self.p == 0:
                raise NotFlat(f"p={self.p} is a zero divisor in {R}")
            try:
                return R.exact_div(x, k)
            except PresentationOnly as exc:
                raise NotFlat(str(exc)) from None
        return R.exact_div(x, k)

    def from_ghost(self, g) -> "WittVec":
        """The unique vector with the given ghost components (A must be p-torsion-free)."""
        if isinstance(g, GhostVec):
            entries = g.entries
        else:
            entries = self.ghost_vec(g).entries
        p = self.p
        comps = []
        powers = []
        for i, w in enumerate(entries):
            acc = w
            for j in range(i):
                powers[j] = powers[j] ** p
                acc = acc - powers[j] * (p ** j)
            try:
                a = self._divide(acc, p ** i)
            except (NotDivisible, NotInGhostImage) as exc:
                raise NotInGhostImage(f"ghost entry {i} not in the image: {exc}") from None
            comps.append(a)
            powers.append(a)
        return WittVec(self, tuple(comps))

    def exact_div(self, v: "WittVec", k: int) -> "WittVec":
        """v / k via ghost coordinates (needed when this ring is itself a coefficient ring)."""
        g = self.ghost(v)
        try:
            return self.from_ghost(GhostVec(self, tuple(self._divide(e, k) for e in g.entries)))
        except NotDivisible as exc:
            raise NotInGhostImage(str(exc)) from None

    # -- structure maps -------------------------------------------------------
    def teich(self, a) -> "WittVec":
        a = self._coerce_comp(a)
        z = self.ring.zero()
        return WittVec(self, (a,) + tuple(z for _ in range(self.n)))

    def versch(self, v: "WittVec") -> "WittVec":
        """V: W_{n-1}(A) -> W_n(A), (a_0..a_{n-1}) -> (0, a_0, ..., a_{n-1})."""
        if self.n < 1:
            raise LengthError("Verschiebung needs n >= 1")
        if isinstance(v, WittVec):
            if v.ctx != self.with_length(self.n - 1):
                raise CtxMismatch("argument must have length n-1")
            comps = v.comps
        else:
            comps = self.with_length(self.n - 1).vec(v).comps
        return WittVec(self, (self.ring.zero(),) + tuple(comps))

    def versch_power(self, k: int, v: "WittVec") -> "WittVec":
        """V^k of a vector of length n-k."""
        if k == 0:
            return v
        return WittVec(self, tuple(self.ring.zero() for _ in range(k)) + tuple(v.comps))

    def frob(self, v: "WittVec") -> "WittVec":
        """F: W_n(A) -> W_{n-1}(A), the ghost shift w_i(Fv) = w_{i+1}(v)."""
        self._check(v)
        if self.n < 1:
            raise LengthError("Frobenius needs n >= 1")
        return self._apply("F", v, out_n=self.n - 1)

    def truncate(self, v: "WittVec", m: int) -> "WittVec":
        self._check(v)
        if m < 0 or m > self.n:
            raise LengthError(f"cannot truncate length {self.n} to {m}")
        return WittVec(self.with_length(m), v.comps[:m + 1])

    # -- reduced ghost and the alpha equalizer -------------------------------
    def reduced_target(self) -> FPRing:
        R = self.ring
        if not isinstance(R, FPRing):
            raise TypeError("reduced ghost needs an FPRing coefficient ring")
        return R.quotient_int(self.p ** (self.n + 1))

    def rgh_lift(self, v: "WittVec") -> RingElem:
        """sum_{i<=n} p^i a_i^(p^(n+1-i)) in A (before reduction)."""
        self._check(v)
        p, n = self.p, self.n
        total = self.ring.zero()
        for i, a in enumerate(v.comps):
            total = total + a ** (p ** (n + 1 - i)) * (p ** i)
        return total

    def rgh(self, v: "WittVec") -> RingElem:
        """Reduced ghost map W_n(A) -> A/p^(n+1)."""
        Q = self.reduced_target()
        return Q.elem(self.rgh_lift(v).value)

    def alpha(self, v: "WittVec"):
        """For v in W_n(A): (truncation to W_{n-1}(A), gh_n(v))."""
        self._check(v)
        if self.n < 1:
            raise LengthError("alpha needs a vector of length >= 1")
        return self.truncate(v, self.n - 1), ghost_component(self.p, self.n, v.comps)

    def alpha_section(self, w: "WittVec", a) -> "WittVec":
        """The unique v in W_{n+1}(A) with alpha(v) = (w, a); here self is W_n(A)."""
        self._check(w)
        a = self._coerce_comp(a)
        p, n = self.p, self.n
        Q = self.reduced_target()
        lifted = self.rgh_lift(w)
        if not Q.elem((a - lifted).value).is_zero():
            raise CongruenceFailed(f"{a} is not congruent to rgh(w) modulo {p}^{n + 1}")
        try:
            last = self._divide(a - lifted, p ** (n + 1))
        except (NotDivisible, NotInGhostImage) as exc:
            raise CongruenceFailed(str(exc)) from None
        return WittVec(self.with_length(n + 1), tuple(w.comps) + (last,))

    # -- random elements -----------------------------------------------------
    def random(self, rng, **kw) -> "WittVec":
        R = self.ring
        if isinstance(R, WittCtx):
            return WittVec(self, tuple(R.random(rng, **kw) for _ in range(self.n + 1)))
        return WittVec(self, tuple(random_ring_elem(R, rng, **kw) for _ in range(self.n + 1)))


def random_ring_elem(R: FPRing, rng, degree: int = 3, bound: int = 5, terms: int = 4) -> RingElem:
    """A random element with small coefficients and bounded degree."""
    base = R.coeff_base
    nv = len(R.vars)
    if nv == 0:
        if base.kind == "mod":
            return R.from_int(int(rng.integers(0, base.m)))
        return R.from_int(int(rng.integers(-bound, bound + 1)))
    d = {}
    for _ in range(int(rng.integers(1, terms + 1))):
        e = [0] * nv
        deg = int(rng.integers(0, degree + 1))
        for _k in range(deg):
            e[int(rng.integers(0, nv))] += 1
        d[tuple(e)] = d.get(tuple(e), 0) + int(rng.integers(-bound, bound + 1))
    return R.elem(Poly(R.vars, d, base))


class WittVec:
    """An element (a_0, ..., a_n) of W_n(A)."""

    __slots__ = ("ctx", "comps", "_gh")

    def __init__(self, ctx: WittCtx, comps: tuple):
        self.ctx = ctx
        self.comps = comps
        self._gh = None     # ghost components, filled in on first use

    def _other(self, o):
        if isinstance(o, WittVec):
            return o
        if isinstance(o, int):
            return self.ctx.from_int(o)
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        return self.ctx.add(self, o)

    __radd__ = __add__

    def __sub__(self, o):
        return self.ctx.sub(self, self._other(o))

    def __rsub__(self, o):
        return self.ctx.sub(self._other(o), self)

    def __neg__(self):
        return self.ctx.neg(self)

    def __mul__(self, o):
        o = self._other(o)
        return self.ctx.mul(self, o)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = self.ctx.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def __eq__(self, o):
        if isinstance(o, int):
            o = self.ctx.from_int(o)
        if not isinstance(o, WittVec):
            return NotImplemented
        return self.ctx == o.ctx and all(a == b for a, b in zip(self.comps, o.comps))

    def __hash__(self):
        return hash((self.ctx, self.comps))

    def is_zero(self) -> bool:
        return all(c == 0 if not isinstance(c, WittVec) else c.is_zero() for c in self.comps)

    def ghost(self) -> "GhostVec":
        return self.ctx.ghost(self)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.comps) + ")"

    def __repr__(self):
        return f"WittVec{self}"


class GhostVec:
    """Ghost coordinates (w_0, ..., w_n) with entrywise ring structure."""

    __slots__ = ("ctx", "entries")

    def __init__(self, ctx: WittCtx, entries: tuple):
        self.ctx = ctx
        self.entries = entries

    def __add__(self, o):
        return GhostVec(self.ctx, tuple(a + b for a, b in zip(self.entries, o.entries)))

    def __mul__(self, o):
        return GhostVec(self.ctx, tuple(a * b for a, b in zip(self.entries, o.entries)))

    def __neg__(self):
        return GhostVec(self.ctx, tuple(-a for a in self.entries))

    def __eq__(self, o):
        if not isinstance(o, GhostVec):
            return NotImplemented
        return len(self.entries) == len(o.entries) and all(a == b for a, b in zip(self.entries, o.entries))

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# functional interface
# ---------------------------------------------------------------------------

def w_add(u, v):
    return u.ctx.add(u, v)


def w_mul(u, v):
    return u.ctx.mul(u, v)


def w_neg(u):
    return u.ctx.neg(u)


def w_zero(ctx):
    return ctx.zero()


def w_one(ctx):
    return ctx.one()


def ghost(v):
    return v.ctx.ghost(v)


def from_ghost(ctx, g):
    return ctx.from_ghost(g)


def teich(ctx, a):
    return ctx.teich(a)


def versch(ctx, v):
    return ctx.versch(v)


def frob(v):
    return v.ctx.frob(v)


def truncate(v, m):
    return v.ctx.truncate(v, m)


def rgh(v):
    return v.ctx.rgh(v)


def alpha(v):
    return v.ctx.alpha(v)


def alpha_section(w, a):
    return w.ctx.alpha_section(w, a)


def coplethysm(v: WittVec, m: int) -> WittVec:
    """W_{m+n}(A) -> W_m(W_n(A)) with n = length(v) - m, via the two-level ghost grid."""
    ctx = v.ctx
    n = ctx.n - m
    if n < 0 or m < 0:
        raise LengthError("coplethysm needs 0 <= m <= length")
    inner = WittCtx(ctx.p, n, ctx.ring, ctx.method)
    outer = WittCtx(ctx.p, m, inner)
    gh = ctx.ghost(v).entries
    rows = [inner.from_ghost([gh[i + j] for j in range(n + 1)]) for i in range(m + 1)]
    return outer.from_ghost(GhostVec(outer, tuple(rows)))


def ghost_grid(v: WittVec) -> list[list]:
    """For v in W_m(W_n(A)): grid[i][j] = w_j(w_i(v))."""
    return [list(v.ctx.ring.ghost(w).entries) for w in v.ctx.ghost(v).entries]


def univ_batch_mod(p: int, n: int, kind: str, m: int, values: np.ndarray, backend=None) -> np.ndarray:
    """Evaluate one universal family at many component tuples mod m; returns (N, len) residues."""
    values = np.asarray(values, dtype=np.int64)
    out = []
    for exps, coefs in family_arrays(p, n, kind, m):
        out.append(_kernels.eval_mod(exps, coefs, values[:, :exps.shape[1]], m, backend=backend))
    return np.stack(out, axis=1)


@lru_cache(maxsize=1)
def _crt_primes(count: int = 64) -> tuple[int, ...]:
    out = []
    q = _kernels.MAX_MODULUS - 1
    while len(out) < count:
        if is_prime(q):
            out.append(q)
        q -= 2
    return tuple(out)


def univ_batch_int(p: int, n: int, kind: str, rows: Sequence[Sequence[int]], backend=None) -> list[list[int]]:
    """Exact integer values of a universal family at many integer points.

    Each polynomial is evaluated modulo enough primes just below 2^50 to exceed twice
    the bound l1(f) * max|x|^deg(f), then reconstructed by CRT.
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return []
    M = max(1, max(abs(x) for r in rows for x in r))
    terms = family_terms(p, n, kind)
    primes = _crt_primes()
    need = max(2 * l1 * M ** deg + 1 for _, _, l1, deg in terms)
    chosen, prod = [], 1
    for q in primes:
        if prod > need:
            break
        chosen.append(q)
        prod *= q
    if prod <= need:
        raise OverflowError("values too large for the CRT prime pool")
    N = len(rows)
    results = [[0] * len(terms) for _ in range(N)]
    for idx, (exps, coefs, l1, deg) in enumerate(terms):
        bound = 2 * l1 * M ** deg + 1
        acc = [0] * N
        mod = 1
        V = exps.shape[1]
        for q in chosen:
            if mod > bound:
                break
            vals = np.array([[x % q for x in r[:V]] for r in rows], dtype=np.int64).reshape(N, V)
            cf = np.array([c % q for c in coefs], dtype=np.int64)
            res = _kernels.eval_mod(exps, cf, vals, q, backend=backend)
            inv = pow(mod, -1, q)
            for i in range(N):
                # Garner step: acc += mod * ((res - acc) / mod mod q)
                t = (int(res[i]) - acc[i]) * inv % q
                acc[i] += mod * t
            mod *= q
        half = mod // 2
        for i in range(N):
            a = acc[i]
            results[i][idx] = a - mod if a > half else a
    return results


__all__ = ["WittCtx", "WittVec", "GhostVec", "w_add", "w_mul", "w_neg", "w_zero", "w_one", "ghost",
           "from_ghost", "teich", "versch", "frob", "truncate", "rgh", "alpha", "alpha_section",
           "coplethysm", "ghost_grid", "integer_witt_components", "random_ring_elem", "univ_batch_mod",
           "univ_batch_int",
           "x_vars", "xy_vars"]
