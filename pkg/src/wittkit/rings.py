"""Finitely presented rings, their elements and homomorphisms.

Equality is decided by rewriting to normal form. A rewrite system is obtained
by orienting every relation at its graded-lex leading term and completing
with critical pairs; this succeeds whenever all leading coefficients that
arise are units (always over a prime field). Two further normalizations are
applied during completion because they are isomorphisms of rings:

* an integer constant c in the ideal replaces the base by Z/c;
* a relation ``c*v - u`` (c an integer, u a unit, v a variable) inverts the
  primes of c in the base.

If completion meets any other non-monic leading term, or exceeds its bounds,
the ring is *presentation-only*: it supports evaluation (homomorphisms, point
counts) but equality queries raise :class:`PresentationOnly`.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import PresentationOnly, SearchTooLarge, VerificationFailed
from .fields import field_tables
from .poly import Poly, _ReduceHeap, divides, mono_degree, mono_lcm, pack, parse_poly, unpack
from .scalars import ZZ, Scalar, prime_factors, prime_power

MAX_RULES = 80
MAX_PAIRS = 6000
MAX_STEPS = 150_000  # rewrite steps allowed during one completion


class _BaseChange(Exception):
    def __init__(self, base):
        self.base = base


class _Incomplete(Exception):
    pass


class RewriteSystem:
    """Monic rules ``lhs -> -tail`` over a fixed variable tuple and base."""

    def __init__(self, vars, base, rules):
        self.vars = tuple(vars)
        self.base = base
        self.rules = list(rules)  # [(lhs_packed, {packed: coef})]
        self.step_budget = None

    def reduce_terms(self, terms: dict, clean: bool = False) -> dict:
        """Normal form of a term dict; ``clean`` means coefficients are already canonical."""
        nv = len(self.vars)
        co = self.base.coerce
        rules = self.rules
        if not clean:
            terms = {k: c for k, c in ((k, co(c)) for k, c in terms.items()) if c}
        if not rules:
            return dict(terms)
        heap = _ReduceHeap(dict(terms))
        out = {}
        while True:
            kc = heap.pop()
            if kc is None:
                return out
            k, c = kc
            for lhs, tail in rules:
                if divides(lhs, k, nv):
                    if self.step_budget is not None:
                        self.step_budget -= 1
                        if self.step_budget < 0:
                            raise _Incomplete("rewrite step budget exceeded")
                    q = k - lhs
                    for kt, ct in tail.items():
                        heap.add(kt + q, -c * ct, co)
                    break
            else:
                out[k] = c

    def reduce(self, f: Poly) -> Poly:
        f = f.change_base(self.base).with_vars(self.vars)
        if not self.rules:
            return f
        return Poly._raw(self.vars, self.base, self.reduce_terms(f._t, clean=True))

    def lhs_monomials(self):
        return [l for l, _ in self.rules]


def _complete(vars, base, polys, max_rules=MAX_RULES, max_pairs=MAX_PAIRS, max_steps=MAX_STEPS):
    """Critical-pair completion with monic leading terms. Returns a RewriteSystem."""
    nv = len(vars)
    co = base.coerce
    rs = RewriteSystem(vars, base, [])
    rs.step_budget = max_steps
    alive: dict[int, tuple[int, dict]] = {}
    next_id = 0
    pairs: list[tuple[int, int]] = []
    pending = [p.change_base(base).with_vars(vars)._t for p in polys]
    budget = max_pairs

    def refresh():
        rs.rules = sorted(alive.values(), key=lambda r: r[0])

    def add(terms):
        nonlocal next_id
        r = rs.reduce_terms(terms)
        if not r:
            return
        lead = max(r)
        c = r[lead]
        if mono_degree(lead, nv) == 0:
            num = c.numerator if isinstance(c, Fraction) else c
            raise _BaseChange(base.quotient(num))
        if not base.is_unit(c):
            if base.kind in ("Z", "inv") and len(r) == 2:
                k0 = pack([0] * nv)
                if k0 in r and base.is_unit(r[k0]) and mono_degree(lead, nv) == 1:
                    num = c.numerator if isinstance(c, Fraction) else c
                    raise _BaseChange(base.join_inverted(prime_factors(num)))
            raise _Incomplete(f"non-unit leading coefficient {c}")
        inv = base.inverse(c)
        monic = {k: co(v * inv) for k, v in r.items()}
        tail = {k: v for k, v in monic.items() if k != lead}
        # rules whose lhs the new lead divides are re-queued
        for rid in [i for i, (l, _) in alive.items() if divides(lead, l, nv)]:
            l, t = alive.pop(rid)
            full = dict(t)
            full[l] = 1
            pending.append(full)
        rid = next_id
        next_id += 1
        for other in alive:
            pairs.append((other, rid))
        alive[rid] = (lead, tail)
        if len(alive) > max_rules:
            raise _Incomplete("rule budget exceeded")
        refresh()

    while pending or pairs:
        if pending:
            add(pending.pop())
            continue
        i, j = pairs.pop()
        if i not in alive or j not in alive:
            continue
        budget -= 1
        if budget < 0:
            raise _Incomplete("critical pair budget exceeded")
        (l1, t1), (l2, t2) = alive[i], alive[j]
        lcm = mono_lcm(l1, l2, nv)
        if lcm == l1 + l2:
            continue  # coprime leading monomials
        s = {}
        q1, q2 = lcm - l1, lcm - l2
        for k, c in t1.items():
            s[k + q1] = s.get(k + q1, 0) + c
        for k, c in t2.items():
            s[k + q2] = s.get(k + q2, 0) - c
        add(s)
    # inter-reduce tails
    final = []
    for lead, tail in sorted(alive.values(), key=lambda r: r[0]):
        others = RewriteSystem(vars, base, [r for r in alive.values() if r[0] != lead])
        final.append((lead, others.reduce_terms(tail)))
    return RewriteSystem(vars, base, final)


class FPRing:
    """A finitely presented algebra ``base[vars]/(relations)``."""

    def __init__(self, base: Scalar = ZZ, vars: Sequence[str] = (), relations: Iterable = (),
                 rewrite: Sequence[tuple] | None = None, name: str | None = None,
                 effort: int | None = None):
        self.base = base
        self._effort = effort or MAX_STEPS
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        self.relations = tuple(self._as_poly(r) for r in relations)
        self.name = name
        self.confluent = False
        self.coeff_base = base
        self._rs = None
        self.failure = None
        hints = [self._rule_poly(r) for r in rewrite] if rewrite else []
        self._build(hints)

    # -- construction helpers ------------------------------------------------
    def _as_poly(self, r) -> Poly:
        if isinstance(r, str):
            return parse_poly(r, self.vars, self.base)
        if isinstance(r, Poly):
            return r.with_vars(self.vars).change_base(self.base)
        return Poly.const(r, self.vars, self.base)

    def _rule_poly(self, rule) -> Poly:
        lhs, rhs = rule
        lp, rp = self._as_poly(lhs), self._as_poly(rhs)
        if len(lp) != 1 or lp.leading()[1] != 1:
            raise ValueError(f"rewrite lhs must be a monomial: {lhs}")
        if rp and max(rp._t) >= lp.leading()[0]:
            raise ValueError(f"rule {lhs} -> {rhs} is not decreasing in graded-lex order")
        return lp - rp

    def _build(self, hints):
        base = self.base
        polys = list(hints) + list(self.relations)
        for _ in range(12):
            try:
                rs = _complete(self.vars, base, polys, max_steps=self._effort)
            except _BaseChange as bc:
                base = bc.base
                continue
            except _Incomplete as exc:
                self.failure = str(exc)
                self.coeff_base = self.base
                return
            if hints:
                self._check_hints(hints, rs)
            self._rs = rs
            self.coeff_base = base
            self.confluent = True
            return
        self.failure = "too many base changes"

    def _check_hints(self, hints, rs):
        try:
            plain = _complete(self.vars, rs.base, self.relations, max_steps=self._effort)
        except (_BaseChange, _Incomplete):
            plain = None
        for h in hints:
            if plain is not None:
                if plain.reduce(h):
                    raise ValueError(f"rewrite rule {h} is not in the relation ideal")
            elif not any(_unit_multiple(h, r) for r in self.relations):
                raise ValueError(f"cannot certify rewrite rule {h}")

    # -- basic API ------------------------------------------------------------
    @property
    def is_free(self) -> bool:
        return not self.relations

    @property
    def rewrite_system(self) -> RewriteSystem:
        if not self.confluent:
            raise PresentationOnly(f"{self} has no confluent rewrite system ({self.failure})")
        return self._rs

    def rules(self) -> list[tuple[Poly, Poly]]:
        """The completed rewrite rules as (lhs monomial, rhs) pairs."""
        rs = self.rewrite_system
        out = []
        for lead, tail in rs.rules:
            lhs = Poly._raw(self.vars, rs.base, {lead: 1})
            rhs = -Poly._raw(self.vars, rs.base, dict(tail))
            out.append((lhs, rhs))
        return out

    def poly(self, x) -> Poly:
        if isinstance(x, RingElem):
            return x.value
        if isinstance(x, str):
            return parse_poly(x, self.vars, self.coeff_base)
        if isinstance(x, Poly):
            return x.with_vars(self.vars).change_base(self.coeff_base)
        return Poly.const(x, self.vars, self.coeff_base)

    def normal_form(self, x) -> Poly:
        f = self.poly(x)
        return self.rewrite_system.reduce(f)

    def elem(self, x) -> "RingElem":
        return RingElem(self, self.poly(x))

    __call__ = elem

    def gens(self) -> list["RingElem"]:
        return [self.elem(Poly.var(v, self.vars, self.coeff_base)) for v in self.vars]

    def gen(self, name: str) -> "RingElem":
        return self.elem(Poly.var(name, self.vars, self.coeff_base))

    def zero(self) -> "RingElem":
        return self.elem(0)

    def one(self) -> "RingElem":
        return self.elem(1)

    def from_int(self, c) -> "RingElem":
        return self.elem(c)

    def is_zero_ring(self) -> bool:
        return self.confluent and self.coeff_base.is_zero_ring or (
            self.confluent and bool(self.normal_form(1).is_zero))

    @property
    def p_torsion_free_certified(self) -> bool:
        """Torsion-free base and monic rewrite system: normal-form monomials are a free basis."""
        return self.confluent and self.coeff_base.torsion_free

    def exact_div(self, e: "RingElem", k: int) -> "RingElem":
        """The unique y with k*y = e, for k a non-zero-divisor certified by the presentation."""
        if self.coeff_base.kind == "mod" and gcd(k, self.coeff_base.m) == 1:
            return e * self.coeff_base.inverse(k % self.coeff_base.m)
        if not self.p_torsion_free_certified:
            raise PresentationOnly(f"cannot divide by {k} in {self}: no torsion-free certificate")
        return RingElem(self, self.normal_form(e).exact_div(k), normalized=True)

    def quotient_int(self, k: int) -> "FPRing":
        """This ring modulo the integer k (same presentation over base/k)."""
        return base_change(self, self.base.quotient(k))

    def __eq__(self, other):
        return (isinstance(other, FPRing) and self.base == other.base and self.vars == other.vars
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.base, self.vars, self.relations))

    def __str__(self):
        if self.name:
            return self.name
        s = f"{self.base}[{','.join(self.vars)}]" if self.vars else str(self.base)
        if self.relations:
            s += "/(" + ", ".join(map(str, self.relations)) + ")"
        return s

    __repr__ = __str__


def _unit_multiple(h: Poly, r: Poly) -> bool:
    if len(h) != len(r) or not h:
        return False
    k = max(h._t)
    if k not in r._t:
        return False
    ratio = Fraction(h._t[k]) / Fraction(r._t[k])
    return all(Fraction(c) == ratio * Fraction(r._t.get(m, 0)) for m, c in h._t.items()) and abs(ratio) == 1


class RingElem:
    """An element of an :class:`FPRing`, kept in normal form when one exists."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: FPRing, value: Poly, normalized: bool = False):
        self.ring = ring
        if not normalized:
            value = value.with_vars(ring.vars).change_base(ring.coeff_base)
            if ring.confluent:
                value = ring._rs.reduce(value)
        self.value = value

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise TypeError(f"elements of different rings: {self.ring} vs {other.ring}")
            return other
        return RingElem(self.ring, Poly.const(other, self.ring.vars, self.ring.coeff_base))

    def __add__(self, other):
        return RingElem(self.ring, self.value + self._coerce(other).value)

    __radd__ = __add__

    def __sub__(self, other):
        return RingElem(self.ring, self.value - self._coerce(other).value)

    def __rsub__(self, other):
        return RingElem(self.ring, self._coerce(other).value - self.value)

    def __neg__(self):
        return RingElem(self.ring, -self.value, normalized=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingElem(self.ring, self.value.scale(other))
        return RingElem(self.ring, self.value * self._coerce(other).value)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        r = self.ring.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def is_zero(self) -> bool:
        if not self.ring.confluent:
            raise PresentationOnly(f"equality undecidable in {self.ring}")
        return self.value.is_zero

    def __eq__(self, other):
        if not isinstance(other, (RingElem, int, Fraction)):
            return NotImplemented
        return (self - self._coerce(other)).is_zero()

    def __hash__(self):
        if not self.ring.confluent:
            raise PresentationOnly("unhashable: no normal form")
        return hash(self.value)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"RingElem({self.value}, ring={self.ring})"


def normal_form(e: RingElem) -> RingElem:
    if not e.ring.confluent:
        raise PresentationOnly(f"{e.ring} has no confluent rewrite system")
    return RingElem(e.ring, e.ring.normal_form(e.value), normalized=True)


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

class RingHom:
    """A homomorphism determined by the images of the domain generators."""

    def __init__(self, domain: FPRing, codomain: FPRing, images, check: bool = True):
        self.domain = domain
        self.codomain = codomain
        if isinstance(images, Mapping):
            images = [images[v] for v in domain.vars]
        images = list(images)
        if len(images) != len(domain.vars):
            raise ValueError("need one image per domain generator")
        self.images = [codomain.elem(i) for i in images]
        if not domain.coeff_base.maps_to(codomain.coeff_base) and not domain.base.maps_to(codomain.coeff_base):
            raise ValueError(f"no base map {domain.base} -> {codomain.coeff_base}")
        self.checked = False
        if check:
            self.verify()

    def verify(self):
        """Check every domain relation maps to 0 (possible only with a confluent codomain)."""
        if not self.codomain.confluent:
            self.checked = False
            return False
        for r in self.domain.relations:
            img = self.apply_poly(r)
            if not img.is_zero():
                raise VerificationFailed(f"relation {r} maps to {img}, not 0", witness=str(r))
        self.checked = True
        return True

    def apply_poly(self, f: Poly) -> RingElem:
        cod = self.codomain
        imgs = [i.value for i in self.images]
        f = f.change_base(cod.coeff_base) if f.base != cod.coeff_base else f
        if not imgs:
            return cod.elem(f.constant_value() if f else 0)
        return RingElem(cod, f.compose(imgs, vars=cod.vars, base=cod.coeff_base))

    def __call__(self, x) -> RingElem:
        if isinstance(x, RingElem):
            return self.apply_poly(x.value)
        return self.apply_poly(self.domain.poly(x))

    def then(self, other: "RingHom") -> "RingHom":
        """``other ∘ self``."""
        return RingHom(self.domain, other.codomain, [other(i) for i in self.images], check=False)

    def equals_on_generators(self, other: "RingHom") -> bool:
        return all(a == b for a, b in zip(self.images, other.images))

    @classmethod
    def identity(cls, A: FPRing) -> "RingHom":
        return cls(A, A, A.gens(), check=False)

    @classmethod
    def by_names(cls, domain: FPRing, codomain: FPRing, overrides: Mapping | None = None,
                 check: bool = True) -> "RingHom":
        """Generators go to same-named codomain generators unless overridden."""
        overrides = dict(overrides or {})
        imgs = []
        for v in domain.vars:
            if v in overrides:
                imgs.append(overrides[v])
            elif v in codomain.vars:
                imgs.append(codomain.gen(v))
            else:
                imgs.append(codomain.zero())
        return cls(domain, codomain, imgs, check=check)

    def __repr__(self):
        body = ", ".join(f"{v}->{i}" for v, i in zip(self.domain.vars, self.images))
        return f"RingHom({self.domain} -> {self.codomain}: {body})"


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def fresh_name(taken: Iterable[str], stem: str) -> str:
    taken = set(taken)
    if stem not in taken:
        return stem
    i = 1
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


def free_ring(names, base: Scalar = ZZ) -> FPRing:
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return FPRing(base, tuple(names), ())


def localize(A: FPRing, f, name: str | None = None) -> FPRing:
    """A[1/f] presented as A[u]/(u*f - 1); ``structure_hom`` gives A -> A[1/f]."""
    fp = A.poly(f) if not isinstance(f, RingElem) else f.value
    if A.confluent and A.normal_form(fp).is_zero:
        raise ValueError("cannot invert zero")
    u = name or fresh_name(A.vars, "u")
    vars = A.vars + (u,)
    rel = Poly.var(u, vars, A.base) * fp.with_vars(vars).change_base(A.base) - 1
    B = FPRing(A.base, vars, tuple(r.with_vars(vars) for r in A.relations) + (rel,))
    B.parent = A
    B.inverted = fp
    B.inverse_var = u
    return B


def structure_hom(B: FPRing) -> RingHom:
    """The canonical map from the ring B was built from (by localize/base_change)."""
    A = getattr(B, "parent", None)
    if A is None:
        raise ValueError(f"{B} has no recorded parent ring")
    return RingHom.by_names(A, B)


def base_change(A: FPRing, base: Scalar, effort: int | None = None) -> FPRing:
    rels = tuple(r.change_base(base) for r in A.relations)
    B = FPRing(base, A.vars, [r for r in rels if r], effort=effort)
    B.parent = A
    return B


def mod_fiber(A: FPRing, m: int, effort: int | None = None) -> FPRing:
    """The same presentation over Z/m."""
    if A.base.kind != "Z":
        raise ValueError("mod_fiber expects a ring over Z")
    return base_change(A, Scalar.mod(m), effort=effort)


def _rename(vars, taken, suffix):
    out = {}
    for v in vars:
        nv = v
        while nv in taken or nv in out.values():
            nv = nv + suffix
        out[v] = nv
    return out


def product_ring(A: FPRing, B: FPRing, idempotent: str = "e"):
    """A x B as base[e, A-vars, B-vars] with e idempotent.

    Returns ``(ring, proj_A, proj_B)``; ``proj_A`` sends e to 0, ``proj_B`` sends e to 1.
    """
    if A.base != B.base:
        raise ValueError("product_ring needs a common base")
    e = fresh_name(set(A.vars) | set(B.vars), idempotent)
    ra = _rename(A.vars, {e}, "a")
    rb = _rename(B.vars, {e} | set(ra.values()), "b")
    vars = (e,) + tuple(ra[v] for v in A.vars) + tuple(rb[v] for v in B.vars)
    base = A.base
    E = Poly.var(e, vars, base)
    one = Poly.const(1, vars, base)

    def moved(r: Poly, ren):
        return r.compose({v: Poly.var(ren[v], vars, base) for v in r.vars}, vars=vars, base=base)

    rels = [E * E - E]
    for v in A.vars:
        rels.append(E * Poly.var(ra[v], vars, base))
    for v in B.vars:
        rels.append((one - E) * Poly.var(rb[v], vars, base))
    rels += [(one - E) * moved(r, ra) for r in A.relations]
    rels += [E * moved(r, rb) for r in B.relations]
    P = FPRing(base, vars, rels)
    pa = RingHom(P, A, [A.zero()] + A.gens() + [A.zero()] * len(B.vars), check=A.confluent)
    pb = RingHom(P, B, [B.one()] + [B.zero()] * len(A.vars) + B.gens(), check=B.confluent)
    return P, pa, pb


def tensor_ring(A: FPRing, B: FPRing) -> FPRing:
    """A ⊗ B over the common base (variables renamed apart when they clash)."""
    if A.base != B.base:
        raise ValueError("tensor_ring needs a common base")
    rb = _rename(B.vars, set(A.vars), "_2")
    vars = A.vars + tuple(rb[v] for v in B.vars)
    rels = [r.with_vars(vars) for r in A.relations]
    rels += [r.compose({v: Poly.var(rb[v], vars, B.base) for v in B.vars}, vars=vars, base=B.base)
             for r in B.relations]
    return FPRing(A.base, vars, rels)


def tensor_power(A: FPRing, k: int) -> FPRing:
    """A^{⊗k} with copy i of variable x named ``x_i``."""
    vars = tuple(f"{v}_{i}" for i in range(k) for v in A.vars)
    rels = []
    for i in range(k):
        sub = {v: Poly.var(f"{v}_{i}", vars, A.base) for v in A.vars}
        rels += [r.compose(sub, vars=vars, base=A.base) if A.vars else r for r in A.relations]
    return FPRing(A.base, vars, rels)


# ---------------------------------------------------------------------------
# brute-force point counting
# ---------------------------------------------------------------------------

MAX_POINT_VARS = 4
MAX_FIELD = 128


def _coef_to_field(c, p: int, base: Scalar):
    if isinstance(c, Fraction):
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


def count_points(A: FPRing, q: int, backend: str | None = None) -> int:
    """Number of ring maps A -> F_q, by exhaustive search."""
    pk = prime_power(q)
    if pk is None or q > MAX_FIELD:
        raise SearchTooLarge(f"q={q} must be a prime power <= {MAX_FIELD}")
    if len(A.vars) > MAX_POINT_VARS:
        raise SearchTooLarge(f"{len(A.vars)} variables exceed the limit of {MAX_POINT_VARS}")
    p = pk[0]
    base = A.base
    if base.kind == "mod" and base.m % p:
        return 0
    if base.kind == "inv" and p in base.S:
        return 0
    _, add, mul = field_tables(q)
    nv = len(A.vars)
    exps, coefs, offsets = [], [], [0]
    for r in A.relations:
        for k, c in r._t.items():
            cf = _coef_to_field(c, p, base)
            if cf:
                exps.append(unpack(k, nv))
                coefs.append(cf)
        offsets.append(len(coefs))
    exps_a = np.array(exps, dtype=np.int64).reshape(len(exps), nv)
    return _kernels.count_zeros(q, add, mul, nv, exps_a, np.array(coefs, dtype=np.int64),
                                np.array(offsets, dtype=np.int64), backend=backend)


def same_ideal(A: FPRing, polys) -> bool:
    """Whether the relations of A generate the same ideal as ``polys`` (both sides confluent)."""
    B = FPRing(A.base, A.vars, [A._as_poly(f) for f in polys])
    if not (A.confluent and B.confluent):
        raise PresentationOnly("ideal comparison needs confluent rewrite systems on both sides")
    return (all(A.normal_form(f).is_zero for f in B.relations)
            and all(B.normal_form(r).is_zero for r in A.relations))


def presented_ring(base: Scalar, vars: Sequence[str], relations: Sequence[str]) -> FPRing:
    return FPRing(base, tuple(vars), [parse_poly(r, vars, base) for r in relations])


Z = FPRing(ZZ, (), (), name=None)
