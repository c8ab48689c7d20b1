"""p-derivations and arithmetic jet rings.

For A = Z[x_1..x_k]/(f_1..f_r) the level-n jet ring Λ_n⊙A is presented on
the variables δ^j x_i (0 <= j <= n), written ``x`` for j = 0 and ``d<j>_x``
otherwise, in level-major order, with relations δ^j f_m. The Frobenius lift
acts by φ(δ^j x) = (δ^j x)^p + p δ^{j+1} x and δf = (φ(f) - f^p)/p.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb

from .errors import BadBase, IsoFailed, LevelExceeded, NotDivisible, VerificationFailed
from .poly import Poly, poly_sum
from .rings import FPRing, RingElem, RingHom, localize, mod_fiber, same_ideal, tensor_power
from .scalars import ZZ, Scalar, is_prime, prime_power
from .witt.universal import invert_ghost_polys

_JET_RE = re.compile(r"^d(\d+)_(.+)$")


def jet_name(x: str, j: int) -> str:
    return x if j == 0 else f"d{j}_{x}"


def parse_jet_name(name: str) -> tuple[str, int]:
    m = _JET_RE.match(name)
    if m:
        return m.group(2), int(m.group(1))
    return name, 0


class JetCtx:
    """Context (p, n, A) for computations in Λ_n⊙A."""

    def __init__(self, p: int, n: int, A: FPRing):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if n < 0:
            raise ValueError("level must be nonnegative")
        self.p = p
        self.n = n
        self.A = A
        base = A.base
        extra = []
        if base.kind == "mod":
            # a Z/m-algebra is the Z-algebra with the extra relation m
            extra.append(Poly.const(base.m, A.vars, ZZ))
            base = ZZ
        elif base.kind == "inv" and p in base.S:
            raise BadBase(f"p={p} is inverted in {A.base}")
        self.base: Scalar = base
        self.relations = extra + [r.lift() if r.base.kind == "mod" else r for r in A.relations]
        self.vars = tuple(jet_name(x, j) for j in range(n + 1) for x in A.vars)
        self._level = {v: parse_jet_name(v)[1] for v in self.vars}
        self._phi_images = None

    def __repr__(self):
        return f"JetCtx(p={self.p}, n={self.n}, A={self.A})"

    def level_vars(self, j: int) -> tuple[str, ...]:
        return tuple(jet_name(x, j) for x in self.A.vars)

    def poly(self, f) -> Poly:
        if isinstance(f, RingElem):
            f = f.value
        if isinstance(f, str):
            from .poly import parse_poly
            return parse_poly(f, self.vars, self.base)
        if isinstance(f, Poly):
            return f.with_vars(self.vars).change_base(self.base) if f.base.kind != "mod" else \
                f.lift().with_vars(self.vars)
        return Poly.const(f, self.vars, self.base)

    def depth(self, f: Poly) -> int:
        used = f.used_vars()
        return max((self._level[v] for v in used), default=0)

    def var(self, name: str) -> Poly:
        return Poly.var(name, self.vars, self.base)

    def _phi_map(self):
        if self._phi_images is None:
            imgs = []
            for v in self.vars:
                x, j = parse_jet_name(v)
                if j < self.n:
                    imgs.append(self.var(v) ** self.p + self.var(jet_name(x, j + 1)) * self.p)
                else:
                    imgs.append(self.var(v))  # never used: depth is checked first
            self._phi_images = imgs
        return self._phi_images

    def phi_table(self) -> dict[str, Poly]:
        """φ(δ^j x) for j < n."""
        return {v: img for v, img in zip(self.vars, self._phi_map()) if self._level[v] < self.n}

    def extend(self, n: int) -> "JetCtx":
        return JetCtx(self.p, n, self.A)


def phi_apply(ctx: JetCtx, f, i: int = 1) -> Poly:
    """The i-fold Frobenius lift φ^i(f)."""
    f = ctx.poly(f)
    if ctx.depth(f) + i > ctx.n:
        raise LevelExceeded(f"φ^{i} of a depth-{ctx.depth(f)} polynomial needs level {ctx.depth(f) + i} > {ctx.n}")
    imgs = ctx._phi_map()
    for _ in range(i):
        f = f.compose(imgs, vars=ctx.vars, base=ctx.base) if ctx.vars else f
    return f


def delta_apply(ctx: JetCtx, f) -> Poly:
    """δf = (φ(f) - f^p)/p."""
    f = ctx.poly(f)
    if ctx.depth(f) + 1 > ctx.n:
        raise LevelExceeded(f"δ of a depth-{ctx.depth(f)} polynomial needs level {ctx.depth(f) + 1} > {ctx.n}")
    num = phi_apply(ctx, f) - f ** ctx.p
    try:
        return num.exact_div(ctx.p)
    except NotDivisible as exc:  # φ(f) ≡ f^p mod p always holds
        raise AssertionError(f"δ integrality failed: {exc}") from None


def delta_power(ctx: JetCtx, f, j: int) -> Poly:
    f = ctx.poly(f)
    for _ in range(j):
        f = delta_apply(ctx, f)
    return f


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

@dataclass
class JetPresentation:
    ctx: JetCtx
    ring: FPRing
    relations_by_level: list = field(default_factory=list)  # [level][m] -> δ^level f_m

    @property
    def vars(self):
        return self.ring.vars

    @property
    def frobenius(self) -> dict[str, Poly]:
        return self.ctx.phi_table()

    def as_dict(self):
        return {"p": self.ctx.p, "n": self.ctx.n, "vars": list(self.ring.vars),
                "relations": [str(r) for r in self.ring.relations], "base": str(self.ring.base)}


def jet_presentation(ctx: JetCtx, rewrite=None) -> JetPresentation:
    """Λ_n⊙A on the variables δ^j x with relations δ^j f (j <= n)."""
    lifted = [ctx.poly(r) for r in ctx.relations]
    levels = [lifted]
    for _ in range(ctx.n):
        levels.append([delta_apply(ctx, r) for r in levels[-1]])
    rels = [r for lv in levels for r in lv if r]
    ring = FPRing(ctx.base, ctx.vars, rels, rewrite=rewrite)
    return JetPresentation(ctx, ring, levels)


def delta_stability_certificate(ctx: JetCtx, g, r) -> dict:
    """Explicit cofactors for δ(g r) ∈ (r, δr):  δ(g r) = (g^p + p δg) δr + (r^(p-1) δg) r."""
    g, r = ctx.poly(g), ctx.poly(r)
    p = ctx.p
    dg, dr = delta_apply(ctx, g), delta_apply(ctx, r)
    lhs = delta_apply(ctx, g * r)
    c_dr = g ** p + dg * p
    c_r = r ** (p - 1) * dg
    ok = lhs == c_dr * dr + c_r * r
    return {"ok": ok, "cofactor_delta_r": str(c_dr), "cofactor_r": str(c_r)}


def delta_sum_correction(p: int, a: Poly, b: Poly) -> Poly:
    """Σ_{k=1}^{p-1} (binom(p,k)/p) a^k b^(p-k), so δ(a+b) = δa + δb - this."""
    terms = [a ** k * b ** (p - k) * (comb(p, k) // p) for k in range(1, p)]
    return poly_sum(terms) if terms else a.zero()


def check_delta_identities(ctx: JetCtx, a, b) -> dict:
    """Sum rule, product rule and φ = (.)^p + pδ on one pair."""
    a, b = ctx.poly(a), ctx.poly(b)
    p = ctx.p
    da, db = delta_apply(ctx, a), delta_apply(ctx, b)
    return {
        "sum": delta_apply(ctx, a + b) == da + db - delta_sum_correction(p, a, b),
        "product": delta_apply(ctx, a * b) == a ** p * db + b ** p * da + da * db * p,
        "phi": phi_apply(ctx, a) == a ** p + da * p,
    }


# ---------------------------------------------------------------------------
# co-ghost maps
# ---------------------------------------------------------------------------

def coghost(ctx: JetCtx, i: int, presentation: JetPresentation | None = None) -> RingHom:
    """cgh_i: A -> Λ_n⊙A, x -> φ^i(x)."""
    if not 0 <= i <= ctx.n:
        raise LevelExceeded(f"co-ghost index {i} outside 0..{ctx.n}")
    J = presentation or jet_presentation(ctx)
    imgs = [phi_apply(ctx, ctx.var(x), i) for x in ctx.A.vars]
    dom = ctx.A if ctx.A.base == J.ring.base else FPRing(J.ring.base, ctx.A.vars, ctx.relations)
    return RingHom(dom, J.ring, imgs, check=J.ring.confluent)


def coghost_total(ctx: JetCtx, presentation: JetPresentation | None = None) -> RingHom:
    """cgh_{<=n}: A^{⊗(n+1)} -> Λ_n⊙A, copy i of x going to φ^i(x)."""
    J = presentation or jet_presentation(ctx)
    A = ctx.A if ctx.A.base == J.ring.base else FPRing(J.ring.base, ctx.A.vars, ctx.relations)
    T = tensor_power(A, ctx.n + 1)
    imgs = [phi_apply(ctx, ctx.var(x), i) for i in range(ctx.n + 1) for x in ctx.A.vars]
    return RingHom(T, J.ring, imgs, check=J.ring.confluent)


def coghost_cokernel_index(ctx: JetCtx, weight_bound: int) -> dict:
    """Index of the image of cgh_{<=n} in the weighted-degree slice of Λ_n⊙A (A free).

    Weights: δ^j x has weight p^j, and copy i of x in A^{⊗(n+1)} has weight
    p^i, so the co-ghost map preserves the weighted filtration and is
    unitriangular up to the diagonal factors p^(level).
    """
    from .linalg import int_det
    if not ctx.A.is_free:
        raise ValueError("cokernel index is implemented for free A")
    hom = coghost_total(ctx)
    p = ctx.p
    src_vars = hom.domain.vars
    w_src = [p ** int(v.rsplit("_", 1)[1]) for v in src_vars]
    w_tgt = [p ** ctx._level[v] for v in ctx.vars]
    src = list(_weighted_monomials(w_src, weight_bound))
    tgt = list(_weighted_monomials(w_tgt, weight_bound))
    index = {m: k for k, m in enumerate(tgt)}
    rows = []
    for e in src:
        img = Poly.const(1, ctx.vars, ctx.base)
        for v, k in zip(hom.images, e):
            if k:
                img = img * v.value ** k
        row = [0] * len(tgt)
        for mono, c in img.terms():
            if mono not in index:
                raise AssertionError("co-ghost image left the weighted slice")
            row[index[mono]] = c
        rows.append(row)
    if len(src) != len(tgt):
        return {"square": False, "source": len(src), "target": len(tgt)}
    det = abs(int_det(rows))
    return {"square": True, "size": len(src), "index": det, "injective": det != 0}


def _weighted_monomials(weights, bound):
    def rec(i, left):
        if i == len(weights):
            yield ()
            return
        k = 0
        while k * weights[i] <= left:
            for rest in rec(i + 1, left - k * weights[i]):
                yield (k,) + rest
            k += 1
    return rec(0, bound)


# ---------------------------------------------------------------------------
# reduced co-ghost
# ---------------------------------------------------------------------------

def unit_witt_coordinates(ctx: JetCtx, f, length: int | None = None) -> list[Poly]:
    """Witt coordinates t_0..t_m of the unit A -> W_m(Λ_n⊙A): ghost (f, φf, ..., φ^m f)."""
    m = ctx.n if length is None else length
    f = ctx.poly(f)
    ghosts = [phi_apply(ctx, f, i) for i in range(m + 1)]
    return invert_ghost_polys(ctx.p, ghosts)


def rcgh_lift(ctx: JetCtx, f) -> Poly:
    """Σ_{i<=n} p^i t_i^(p^(n+1-i)) with t the unit's Witt coordinates (a lift of rcgh(f))."""
    p, n = ctx.p, ctx.n
    t = unit_witt_coordinates(ctx, f)
    return poly_sum([t[i] ** (p ** (n + 1 - i)) * (p ** i) for i in range(n + 1)])


def rcgh(ctx: JetCtx, presentation: JetPresentation | None = None) -> RingHom:
    """The reduced co-ghost map A -> (Λ_n⊙A)/p^(n+1)."""
    J = presentation or jet_presentation(ctx)
    Q = mod_fiber(J.ring, ctx.p ** (ctx.n + 1)) if J.ring.base.kind == "Z" else J.ring.quotient_int(ctx.p ** (ctx.n + 1))
    imgs = [Q.elem(rcgh_lift(ctx, ctx.var(x))) for x in ctx.A.vars]
    dom = FPRing(Q.base, ctx.A.vars, [r.change_base(Q.base) for r in ctx.relations if r.change_base(Q.base)])
    return RingHom(dom, Q, imgs, check=Q.confluent)


def rcgh_consistency(ctx: JetCtx, f) -> dict:
    """φ^{n+1}(f) - lift(rcgh(f)) is divisible by p^(n+1) in Λ_{n+1}⊙A; the quotient is t_{n+1}."""
    up = ctx.extend(ctx.n + 1)
    f_up = up.poly(f)
    diff = phi_apply(up, f_up, ctx.n + 1) - rcgh_lift(ctx, f).with_vars(up.vars)
    try:
        q = diff.exact_div(ctx.p ** (ctx.n + 1))
    except NotDivisible as exc:
        return {"ok": False, "witness": str(exc)}
    t = unit_witt_coordinates(up, f_up)
    return {"ok": q == t[ctx.n + 1], "quotient": str(q)}


# ---------------------------------------------------------------------------
# Greenberg transform and mod-p étale base change
# ---------------------------------------------------------------------------

def greenberg(A: FPRing, p: int | None = None, lift_shift=None) -> FPRing:
    """Gr_m(A) for A over Z/p^m: the mod-p fiber of Λ_{m-1}⊙(integral lift of A).

    ``lift_shift`` optionally adds p^m times the given polynomials to the
    relations, giving a different integral lift (the result must not change).
    """
    base = A.base
    if base.kind != "mod":
        raise BadBase("Greenberg transform needs a base Z/p^m")
    pk = prime_power(base.m)
    if pk is None or (p is not None and pk[0] != p):
        raise BadBase(f"base Z/{base.m} is not Z/p^m for p={p}")
    p, m = pk
    rels = [r.lift() for r in A.relations]
    if lift_shift:
        shifted = [r + _as_z_poly(s, A.vars) * base.m for r, s in zip(rels, lift_shift)]
        rels = shifted + rels[len(shifted):]
    Alift = FPRing(Scalar.mod(base.m), A.vars, rels)
    ctx = JetCtx(p, m - 1, Alift)
    J = jet_presentation(ctx)
    return mod_fiber(J.ring, p)


def _as_z_poly(s, vars):
    from .poly import parse_poly
    if isinstance(s, Poly):
        return s.lift().with_vars(vars)
    if isinstance(s, str):
        return parse_poly(s, vars, ZZ)
    return Poly.const(s, vars, ZZ)


def jet_mod_p_etale_check(A: FPRing, f, ctx_p: int, n: int) -> dict:
    """F_p ⊗ Λ_n⊙A[1/f] ≅ (F_p ⊗ Λ_n⊙A)[1/f], by explicit inverse homs.

    The jets δ^j u of the inverse u = 1/f are solved from δ^j(u f - 1) = 0
    modulo p, where δ^j u enters linearly with coefficient f^(p^j).

    Certificate: the hom L -> R (L the left fiber, R the right one) is checked
    on every relation of L; R -> L is well defined because the relations of R
    are relations of L; and the solve shows by induction on j that each
    δ^j u is congruent in L to its image, since its coefficient times
    u^(p^j) is 1 in R. When L itself completes, the round trip is also
    checked by normal forms.
    """
    p = ctx_p
    B = localize(A, f)
    u = B.inverse_var
    cB = JetCtx(p, n, B)
    cA = JetCtx(p, n, A)
    L = mod_fiber(jet_presentation(cB).ring, p, effort=20_000)  # F_p ⊗ Λ_n⊙B; completing it is optional
    JA = mod_fiber(jet_presentation(cA).ring, p)
    Fp = Scalar.mod(p)
    rvars = JA.vars + (u,)
    fpoly = A.poly(f).lift().with_vars(rvars).change_base(Fp)
    R = FPRing(Fp, rvars, [r.with_vars(rvars) for r in JA.relations] + [Poly.var(u, rvars, Fp) * fpoly - 1])
    if not R.confluent:
        raise VerificationFailed("could not complete the localized fiber", witness=R.failure)
    # solve the δ^j u successively inside R
    images: dict[str, Poly] = {v: Poly.var(v, rvars, Fp) for v in rvars}
    g = B.relations[-1]                                        # u f - 1
    for j in range(1, n + 1):
        dj = delta_power(cB, g, j).change_base(Fp).with_vars(cB.vars)
        var = jet_name(u, j)
        if dj.degree_in(var) != 1:
            raise VerificationFailed(f"δ^{j}(u f - 1) is not linear in {var} mod {p}", witness=str(dj))
        coeff, rest = _split_linear(dj, var)
        sub = {v: images[v] for v in images}
        coeff_r = R.elem(_subst(coeff, sub, cB.vars, rvars, Fp))
        rest_r = R.elem(_subst(rest, sub, cB.vars, rvars, Fp))
        inv = R.elem(Poly.var(u, rvars, Fp)) ** (p ** j)
        if not (coeff_r * inv).value == R.one().value:
            raise VerificationFailed(f"coefficient of {var} is not f^(p^{j})", witness=str(coeff_r))
        images[var] = (-(rest_r * inv)).value
    to_R = RingHom(L, R, [R.elem(images[v]) if v in images else R.gen(v) for v in L.vars])  # checks relations
    rel_L = set(L.relations)
    if not all(r.with_vars(L.vars) in rel_L for r in R.relations):
        raise VerificationFailed("relations of the localized fiber are not relations of the jet fiber")
    to_L = RingHom(R, L, [L.gen(v) for v in R.vars], check=False)
    round_R = to_L.then(to_R)
    fwd = all(round_R(R.gen(v)) == R.gen(v) for v in R.vars)
    back = None
    if L.confluent:
        round_L = to_R.then(to_L)
        back = all(round_L(L.gen(v)) == L.gen(v) for v in L.vars)
    rep = {"ok": fwd and back is not False,
           "images": {v: str(R.elem(images[v])) for v in L.vars if v not in R.vars},
           "fiber": str(L), "localized_fiber": str(R),
           "round_trip": "normal forms" if back is not None else "triangular solve"}
    if not rep["ok"]:
        raise VerificationFailed("mod-p étale base change failed", witness=rep)
    return rep


def _split_linear(f: Poly, var: str):
    k = f.vars.index(var)
    lin, rest = {}, {}
    for e, c in f.terms():
        if e[k]:
            e2 = list(e)
            e2[k] = 0
            lin[tuple(e2)] = c
        else:
            rest[e] = c
    return Poly(f.vars, lin, f.base), Poly(f.vars, rest, f.base)


def _subst(f: Poly, images: dict, fvars, rvars, base):
    missing = f.used_vars() - set(images)
    if missing:
        raise VerificationFailed(f"no image yet for {sorted(missing)}", witness=str(f))
    zero = Poly.const(0, rvars, base)
    imgs = [images.get(v, zero) for v in fvars]
    return f.with_vars(fvars).compose(imgs, vars=rvars, base=base)


# ---------------------------------------------------------------------------
# named corpus facts
# ---------------------------------------------------------------------------

def corpus_relation(p: int) -> Poly:
    """2x^p δ + p δ^2 - x^p - p δ + p^(p-1) x^p in Z[x, δx] (δx written d1_x)."""
    vars = ("x", "d1_x")
    x, d = Poly.var("x", vars), Poly.var("d1_x", vars)
    return x ** p * d * 2 + d * d * p - x ** p - d * p + x ** p * p ** (p - 1)


def ramified_relation(p: int) -> Poly:
    """p δ^2 + 2 x^p δ + p^(p-1) - 1, the level-1 relation of Z[x]/(x^2 - p) after reduction."""
    vars = ("x", "d1_x")
    x, d = Poly.var("x", vars), Poly.var("d1_x", vars)
    return d * d * p + x ** p * d * 2 + (p ** (p - 1) - 1)


__all__ = ["JetCtx", "JetPresentation", "jet_name", "parse_jet_name", "phi_apply", "delta_apply",
           "delta_power", "jet_presentation", "delta_stability_certificate", "delta_sum_correction",
           "check_delta_identities", "coghost", "coghost_total", "coghost_cokernel_index",
           "unit_witt_coordinates", "rcgh_lift", "rcgh", "rcgh_consistency", "greenberg",
           "jet_mod_p_etale_check", "corpus_relation", "ramified_relation", "same_ideal",
           "IsoFailed"]
