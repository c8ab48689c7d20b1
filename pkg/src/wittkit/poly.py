"""Exact sparse multivariate polynomials over a :class:`~wittkit.scalars.Scalar` base.

Monomials are packed into single Python ints: one 32-bit field per variable
(first variable most significant) below a leading total-degree field. With
that layout integer comparison of packed keys *is* the graded-lexicographic
order, and monomial multiplication is integer addition.
"""
from __future__ import annotations

import heapq
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

try:  # GMP multiplication is much faster for the huge Kronecker integers
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = None

from .errors import NotDivisible, ParseError
from .scalars import ZZ, Scalar

_B = 32
_MASK = (1 << _B) - 1
_HALF = 1 << (_B - 1)


@lru_cache(maxsize=None)
def _layout(nv: int):
    shifts = tuple((nv - 1 - k) * _B for k in range(nv))
    deg_shift = nv * _B
    guard = sum(_HALF << s for s in shifts) | (_HALF << deg_shift)
    return shifts, deg_shift, guard


def pack(exps: Sequence[int]) -> int:
    nv = len(exps)
    shifts, deg_shift, _ = _layout(nv)
    v = sum(exps) << deg_shift
    for e, s in zip(exps, shifts):
        if e < 0 or e >= _HALF:
            raise OverflowError("exponent out of range")
        v |= e << s
    return v


def unpack(m: int, nv: int) -> tuple[int, ...]:
    shifts, _, _ = _layout(nv)
    return tuple((m >> s) & _MASK for s in shifts)


def mono_degree(m: int, nv: int) -> int:
    return m >> (nv * _B)


def divides(lhs: int, m: int, nv: int) -> bool:
    """Whether monomial ``lhs`` divides monomial ``m`` (both packed)."""
    g = _layout(nv)[2]
    return ((m | g) - lhs) & g == g


def mono_lcm(a: int, b: int, nv: int) -> int:
    ea, eb = unpack(a, nv), unpack(b, nv)
    return pack([max(x, y) for x, y in zip(ea, eb)])


class Poly:
    """Immutable polynomial with coefficients normalized in ``base``."""

    __slots__ = ("vars", "base", "_t", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping | None = None, base: Scalar = ZZ):
        self.vars = tuple(vars)
        self.base = base
        t = {}
        nv = len(self.vars)
        if terms:
            for e, c in terms.items():
                if isinstance(e, int) and nv == 1:
                    e = (e,)
                if len(e) != nv:
                    raise ValueError("exponent length does not match variables")
                c = base.coerce(c)
                if c:
                    k = pack(e)
                    c = base.coerce(t.get(k, 0) + c)
                    if c:
                        t[k] = c
                    else:
                        t.pop(k, None)
        self._t = t
        self._hash = None

    # -- raw construction ---------------------------------------------------
    @classmethod
    def _raw(cls, vars, base, packed: dict) -> "Poly":
        p = cls.__new__(cls)
        p.vars = vars
        p.base = base
        p._t = packed
        p._hash = None
        return p

    @classmethod
    def _normalized(cls, vars, base, packed: dict) -> "Poly":
        co = base.coerce
        if base.kind == "Z":
            d = {k: c for k, c in packed.items() if c}
        else:
            d = {}
            for k, c in packed.items():
                c = co(c)
                if c:
                    d[k] = c
        return cls._raw(vars, base, d)

    @classmethod
    def const(cls, c, vars: Sequence[str] = (), base: Scalar = ZZ) -> "Poly":
        vars = tuple(vars)
        c = base.coerce(c)
        return cls._raw(vars, base, {pack([0] * len(vars)): c} if c else {})

    @classmethod
    def var(cls, name: str, vars: Sequence[str], base: Scalar = ZZ) -> "Poly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        if base.is_zero_ring:
            return cls._raw(vars, base, {})
        return cls._raw(vars, base, {pack(e): 1})

    @classmethod
    def gens(cls, vars: Sequence[str], base: Scalar = ZZ) -> list["Poly"]:
        return [cls.var(v, vars, base) for v in vars]

    def zero(self) -> "Poly":
        return Poly._raw(self.vars, self.base, {})

    def one(self) -> "Poly":
        return Poly.const(1, self.vars, self.base)

    # -- inspection --------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    @property
    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and mono_degree(next(iter(self._t)), self.nvars) == 0)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self._t.values())) if self._t else 0

    def constant_term(self):
        return self._t.get(pack([0] * self.nvars), 0)

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        """(exponents, coefficient) pairs in descending graded-lex order."""
        nv = self.nvars
        return [(unpack(k, nv), self._t[k]) for k in sorted(self._t, reverse=True)]

    def to_dict(self) -> dict:
        nv = self.nvars
        return {unpack(k, nv): c for k, c in self._t.items()}

    def coefficients(self) -> list:
        return list(self._t.values())

    def leading(self):
        """(packed monomial, coefficient) of the graded-lex largest term."""
        k = max(self._t)
        return k, self._t[k]

    def total_degree(self) -> int:
        if not self._t:
            return -1
        return mono_degree(max(self._t), self.nvars)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        nv = self.nvars
        return max((unpack(k, nv)[i] for k in self._t), default=-1)

    def used_vars(self) -> set[str]:
        nv = self.nvars
        used = set()
        for k in self._t:
            for v, e in zip(self.vars, unpack(k, nv)):
                if e:
                    used.add(v)
        return used

    # -- alignment ---------------------------------------------------------
    def with_vars(self, vars: Sequence[str]) -> "Poly":
        """Re-express over a (super)set of variables, in the given order."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in self.vars:
            if v in vars:
                idx.append(vars.index(v))
            else:
                idx.append(None)
        nv, tv = self.nvars, len(vars)
        out = {}
        for k, c in self._t.items():
            e = unpack(k, nv)
            ne = [0] * tv
            for j, x in zip(idx, e):
                if x:
                    if j is None:
                        raise ValueError(f"variable missing from target: {self.vars}")
                    ne[j] = x
            out[pack(ne)] = c
        return Poly._raw(vars, self.base, out)

    def change_base(self, base: Scalar) -> "Poly":
        if base == self.base:
            return self
        return Poly._normalized(self.vars, base, {k: base.coerce(c) for k, c in self._t.items()})

    def lift(self) -> "Poly":
        """Same coefficients viewed over the torsion-free lift of the base."""
        return Poly._raw(self.vars, self.base.flat_lift(), dict(self._t))

    def _align(self, other) -> tuple["Poly", "Poly"]:
        if not isinstance(other, Poly):
            return self, Poly.const(other, self.vars, self.base)
        if other.base != self.base:
            if self.base.maps_to(other.base) and not other.base.maps_to(self.base):
                return self.change_base(other.base)._align(other)
            other = other.change_base(self.base)
        if other.vars != self.vars:
            vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
            return self.with_vars(vars), other.with_vars(vars)
        return self, other

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        a, b = self._align(other)
        d = dict(a._t)
        get = d.get
        for k, c in b._t.items():
            d[k] = get(k, 0) + c
        return Poly._normalized(a.vars, a.base, d)

    __radd__ = __add__

    def __neg__(self):
        return Poly._normalized(self.vars, self.base, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        a, b = self._align(other)
        d = dict(a._t)
        get = d.get
        for k, c in b._t.items():
            d[k] = get(k, 0) - c
        return Poly._normalized(a.vars, a.base, d)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = self.base.coerce(c)
        if not c:
            return self.zero()
        return Poly._normalized(self.vars, self.base, {k: v * c for k, v in self._t.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self._align(other)
        if len(a._t) < len(b._t):
            a, b = b, a
        if len(b._t) == 1:
            (kb, cb), = b._t.items()
            return Poly._normalized(a.vars, a.base, {k + kb: c * cb for k, c in a._t.items()})
        if a.base.kind != "inv" and len(a._t) * len(b._t) >= _KRON_MIN:
            d = _kron_mul(a._t, b._t, len(a.vars))
            if d is not None:
                return Poly._normalized(a.vars, a.base, d)
        d = {}
        get = d.get
        bi = list(b._t.items())
        for ka, ca in a._t.items():
            for kb, cb in bi:
                k = ka + kb
                d[k] = get(k, 0) + ca * cb
        return Poly._normalized(a.vars, a.base, d)

    __rmul__ = __mul__

    def square(self) -> "Poly":
        if self.base.kind != "inv" and len(self._t) ** 2 >= 2 * _KRON_MIN:
            d = _kron_mul(self._t, self._t, len(self.vars))
            if d is not None:
                return Poly._normalized(self.vars, self.base, d)
        items = list(self._t.items())
        d = {}
        get = d.get
        for i, (ka, ca) in enumerate(items):
            k = ka + ka
            d[k] = get(k, 0) + ca * ca
            c2 = 2 * ca
            for kb, cb in items[i + 1:]:
                k = ka + kb
                d[k] = get(k, 0) + c2 * cb
        return Poly._normalized(self.vars, self.base, d)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            return self.one()
        if len(self._t) == 1:
            (k, c), = self._t.items()
            return Poly._normalized(self.vars, self.base, {k * e: c ** e})
        result = None
        base = self
        while True:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if not e:
                return result
            base = base.square()

    def __eq__(self, other):
        if isinstance(other, Poly):
            if self.vars != other.vars or self.base != other.base:
                try:
                    a, b = self._align(other)
                except (ValueError, OverflowError):
                    return False
                return a._t == b._t
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.vars, self.base)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.base, frozenset(self._t.items())))
        return self._hash

    def exact_div(self, k) -> "Poly":
        """Divide every coefficient by the nonzero integer ``k`` exactly."""
        if k == 0:
            raise ZeroDivisionError("exact_div by zero")
        nv = self.nvars
        base = self.base
        out = {}
        if base.kind == "Z":
            for m, c in self._t.items():
                q, r = divmod(c, k)
                if r:
                    raise NotDivisible(c, _fmt_mono(self.vars, unpack(m, nv)), k)
                out[m] = q
            return Poly._raw(self.vars, base, out)
        for m, c in self._t.items():
            out[m] = base.divide(c, k, _fmt_mono(self.vars, unpack(m, nv)))
        return Poly._normalized(self.vars, base, out)

    def map_coeffs(self, f) -> "Poly":
        return Poly._normalized(self.vars, self.base, {k: f(c) for k, c in self._t.items()})

    # -- substitution ------------------------------------------------------
    def compose(self, images: Mapping[str, "Poly"] | Sequence["Poly"], vars=None, base=None) -> "Poly":
        """Substitute a polynomial for every variable.

        ``images`` is either a sequence aligned with ``self.vars`` or a mapping
        (variables not mentioned are kept). The result lives over ``vars`` /
        ``base`` (defaulting to those of the images).
        """
        if isinstance(images, Mapping):
            imgs = []
            for v in self.vars:
                imgs.append(images[v] if v in images else None)
            if any(i is None for i in imgs):
                keep = [v for v, i in zip(self.vars, imgs) if i is None]
                tv = tuple(vars) if vars is not None else None
                if tv is None:
                    tv = _union_vars([i for i in imgs if i is not None], keep)
                b = base or next((i.base for i in imgs if i is not None), self.base)
                imgs = [i if i is not None else Poly.var(v, tv, b) for v, i in zip(self.vars, imgs)]
        else:
            imgs = list(images)
        if len(imgs) != self.nvars:
            raise ValueError("wrong number of images")
        if vars is None:
            vars = imgs[0].vars if imgs else ()
            for i in imgs[1:]:
                if i.vars != vars:
                    vars = _union_vars(imgs, [])
                    break
        vars = tuple(vars)
        if base is None:
            base = imgs[0].base if imgs else self.base
        imgs = [i.change_base(base).with_vars(vars) for i in imgs]
        return _substitute(self, imgs, vars, base)

    def evaluate(self, values: Sequence, one, from_scalar=None):
        """Evaluate at elements of an arbitrary ring supporting + and *.

        ``one`` is the ring's unit; ``from_scalar`` maps a coefficient into the
        ring (defaults to ``coefficient * one``).
        """
        nv = self.nvars
        if from_scalar is None:
            def from_scalar(c):
                return one * c
        pows: list[dict[int, object]] = [dict() for _ in range(nv)]

        def power(i, e):
            cache = pows[i]
            if e not in cache:
                if e == 1:
                    cache[1] = values[i]
                else:
                    h = e // 2
                    r = power(i, h)
                    r = r * r
                    if e % 2:
                        r = r * values[i]
                    cache[e] = r
            return cache[e]

        total = None
        for k, c in self._t.items():
            term = None
            for i, e in enumerate(unpack(k, nv)):
                if e:
                    pe = power(i, e)
                    term = pe if term is None else term * pe
            cc = from_scalar(c)
            term = cc if term is None else term * cc
            total = term if total is None else total + term
        if total is None:
            return from_scalar(0)
        return total

    # -- formatting --------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, vars={list(self.vars)}, base={self.base})"


# ---------------------------------------------------------------------------
# Kronecker substitution for dense-ish integer products
# ---------------------------------------------------------------------------

_KRON_MIN = 400


def _kron_mul(ta: dict, tb: dict, nv: int):
    """Product of integer-coefficient term dicts via one big-integer multiply.

    Monomials are laid out densely in mixed radix and coefficients in
    fixed-width signed digits. Returns None when the dense layout would be
    much larger than the sparse work.
    """
    if nv == 0:
        return None
    shifts = _layout(nv)[0]
    dims = [max((k >> s) & _MASK for k in ta) + max((k >> s) & _MASK for k in tb) + 1 for s in shifts]
    size = 1
    for dv in dims:
        size *= dv
    if size > 4 * len(ta) * len(tb) or size > 1 << 22:
        return None
    radix = [1] * nv
    for v in range(nv - 2, -1, -1):
        radix[v] = radix[v + 1] * dims[v + 1]
    if nv == 1:
        def index(k):
            return k & _MASK
    else:
        sr = list(zip(shifts, radix))

        def index(k):
            return sum(((k >> s) & _MASK) * r for s, r in sr)

    ma = max(map(abs, ta.values()))
    mb = max(map(abs, tb.values()))
    width = ((ma * mb * min(len(ta), len(tb))).bit_length() + 9) // 8
    half = 1 << (8 * width - 1)
    bias = _bias(width, size)

    blank = half.to_bytes(width, "little")

    def to_int(t):
        chunks = [blank] * size
        for k, c in t.items():
            chunks[index(k)] = (c + half).to_bytes(width, "little")
        return int.from_bytes(b"".join(chunks), "little") - bias

    A = to_int(ta)
    B = A if tb is ta else to_int(tb)
    raw = memoryview((_bigmul(A, B) + bias).to_bytes(width * size, "little"))
    frm = int.from_bytes
    vals = [frm(raw[j:j + width], "little") - half for j in range(0, width * size, width)]
    out = {}
    if nv == 1:
        for i, c in enumerate(vals):
            if c:
                out[(i << _B) | i] = c
        return out
    for i, c in enumerate(vals):
        if c:
            e = []
            rest = i
            for rv in radix:
                q, rest = divmod(rest, rv)
                e.append(q)
            out[pack(e)] = c
    return out


def _bigmul(a: int, b: int) -> int:
    if _mpz is not None and a.bit_length() + b.bit_length() > 1 << 15:
        return int(_mpz(a) * _mpz(b))
    return a * b


@lru_cache(maxsize=64)
def _bias(width: int, size: int) -> int:
    """The integer whose every width-byte digit equals 2^(8*width-1)."""
    digit = (1 << (8 * width - 1)).to_bytes(width, "little")
    return int.from_bytes(digit * size, "little")


def _union_vars(polys, extra) -> tuple[str, ...]:
    out: list[str] = []
    for p in polys:
        for v in p.vars:
            if v not in out:
                out.append(v)
    for v in extra:
        if v not in out:
            out.append(v)
    return tuple(out)


def _substitute(f: Poly, imgs: list[Poly], vars, base) -> Poly:
    nv = f.nvars
    cache: list[dict[int, Poly]] = [dict() for _ in range(nv)]

    def power(i, e):
        c = cache[i]
        if e not in c:
            if e == 1:
                c[1] = imgs[i]
            else:
                # build up by multiplying the cached nearest lower power
                lower = max((x for x in c if x < e), default=None)
                if lower is None or lower * 2 < e:
                    r = power(i, e // 2)
                    r = r.square()
                    if e % 2:
                        r = r * imgs[i]
                else:
                    r = c[lower] * power(i, e - lower)
                c[e] = r
        return c[e]

    acc: dict[int, object] = {}
    get = acc.get
    for k in sorted(f._t):
        cf = f._t[k]
        term = None
        for i, e in enumerate(unpack(k, nv)):
            if e:
                pe = power(i, e)
                term = pe if term is None else term * pe
        if term is None:
            k0 = pack([0] * len(vars))
            acc[k0] = get(k0, 0) + cf
            continue
        for kk, cc in term._t.items():
            acc[kk] = get(kk, 0) + cc * cf
    return Poly._normalized(vars, base, acc)


# ---------------------------------------------------------------------------
# formatting and parsing
# ---------------------------------------------------------------------------

def _fmt_mono(vars, exps) -> str:
    parts = []
    for v, e in zip(vars, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(p: Poly) -> str:
    if not p._t:
        return "0"
    out = []
    for exps, c in p.terms():
        mono = _fmt_mono(p.vars, exps)
        neg = c < 0
        a = -c if neg else c
        if mono == "1":
            body = p.base.fmt(a)
        elif a == 1:
            body = mono
        else:
            body = f"{p.base.fmt(a)}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^/()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, ident, op = m.groups()
        if num is not None:
            toks.append(("int", int(num)))
        elif ident is not None:
            toks.append(("id", ident))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
    toks.append(("end", None))
    return toks


class _Parser:
    def __init__(self, text, vars, base):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = vars
        self.base = base

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r}, got {t[1]!r}")

    def expr(self):
        parts = [self.term()]
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            r = self.term()
            parts.append(r if op == "+" else -r)
        return poly_sum(parts) if len(parts) > 1 else parts[0]

    def term(self):
        v = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            r = self.factor()
            if op == "*":
                v = v * r
            else:
                if not r.is_constant() or r.is_zero:
                    raise ParseError("division only by nonzero integer constants")
                d = r.constant_value()
                if isinstance(d, Fraction):
                    raise ParseError("division only by integer literals")
                try:
                    if self.base.kind == "inv":
                        v = v * self.base.coerce(Fraction(1, d))
                    else:
                        v = v.exact_div(d)
                except (NotDivisible, ValueError) as exc:
                    raise ParseError(str(exc)) from None
        return v

    def factor(self):
        t = self.peek()
        if t in (("op", "-"), ("op", "+")):
            self.take()
            f = self.factor()
            return -f if t[1] == "-" else f
        a = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            t = self.take()
            if t[0] != "int":
                raise ParseError("exponent must be a nonnegative integer literal")
            a = a ** t[1]
        return a

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return Poly.const(val, self.vars, self.base)
        if kind == "id":
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r}")
            return Poly.var(val, self.vars, self.base)
        if (kind, val) == ("op", "("):
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str, vars: Sequence[str] | None = None, base: Scalar = ZZ) -> Poly:
    """Parse the expression grammar (integers, identifiers, + - * ^, parentheses).

    When ``vars`` is None the variables are taken in order of first appearance.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    if vars is None:
        seen: list[str] = []
        for kind, val in _tokenize(text):
            if kind == "id" and val not in seen:
                seen.append(val)
        vars = seen
    p = _Parser(text, tuple(vars), base)
    if p.peek()[0] == "end":
        raise ParseError("empty expression")
    v = p.expr()
    if p.peek()[0] != "end":
        raise ParseError(f"trailing input at token {p.peek()[1]!r}")
    return v


def poly_sum(polys: Sequence[Poly]) -> Poly:
    """Sum of polynomials over common variables and base, in one pass."""
    polys = list(polys)
    if not polys:
        raise ValueError("empty sum")
    first = polys[0]
    acc: dict = {}
    get = acc.get
    for q in polys:
        if q.vars != first.vars or q.base != first.base:
            _, q = first._align(q)
            if q.vars != first.vars:
                raise ValueError("poly_sum needs a common variable list")
        for k, c in q._t.items():
            acc[k] = get(k, 0) + c
    return Poly._normalized(first.vars, first.base, acc)


def exact_div(f: Poly, k: int) -> Poly:
    return f.exact_div(k)


def poly_ring(names: Iterable[str] | str, base: Scalar = ZZ) -> list[Poly]:
    """Generators of a free polynomial ring, e.g. ``x, y = poly_ring("x y")``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    names = tuple(names)
    return Poly.gens(names, base)


class _ReduceHeap:
    """Max-heap of packed monomials with a coefficient table (used by rewriting)."""

    def __init__(self, terms: dict):
        self.coef = dict(terms)
        self.heap = [-k for k in self.coef]
        heapq.heapify(self.heap)

    def add(self, k, c, co):
        old = self.coef.get(k)
        if old is None:
            c = co(c)
            if c:
                self.coef[k] = c
                heapq.heappush(self.heap, -k)
        else:
            nc = co(old + c)
            if nc:
                self.coef[k] = nc
            else:
                del self.coef[k]

    def pop(self):
        while self.heap:
            k = -heapq.heappop(self.heap)
            c = self.coef.pop(k, None)
            if c is not None:
                return k, c
        return None
