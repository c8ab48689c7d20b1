"""Named verification suites: preservation properties and counterexamples on a fixed corpus.

Every suite returns a :class:`SuiteReport`. Checks are existential over the
corpus: a pass means the stated computation succeeded on these rings, nothing
more. Properties with no finite computation are listed as skips.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from .errors import NotInGhostImage, PresentationOnly, VerificationFailed, WittkitError
from .jets import JetCtx, jet_presentation
from .linalg import nullspace_mod_p, rank_q
from .poly import Poly
from .rings import (FPRing, RingHom, Z, count_points, free_ring, localize, mod_fiber, product_ring,
                    presented_ring, same_ideal)
from .scalars import ZZ
from .witt.presentations import versch_one, witt_localized, wittring_presentation_Z
from .witt.vectors import WittCtx, WittVec


@dataclass
class SuiteReport:
    name: str
    seed: int = 0
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    def add(self, check: str, status, detail=None, witness=None):
        if isinstance(status, bool) or status is None:
            status = "pass" if status else "fail"
        entry = {"check": check, "status": status}
        if detail is not None:
            entry["detail"] = detail
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)
        return status == "pass"

    def skip(self, check: str, reason: str):
        self.checks.append({"check": check, "status": "skip", "detail": reason})

    def merge(self, other: "SuiteReport", prefix: str | None = None):
        for c in other.checks:
            c = dict(c)
            if prefix:
                c["check"] = f"{prefix}: {c['check']}"
            self.checks.append(c)

    @property
    def ok(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def counts(self):
        out = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            out[c["status"]] += 1
        return out

    def as_dict(self):
        return {"suite": self.name, "seed": self.seed, "ok": self.ok, "counts": self.counts(),
                "checks": self.checks, "seconds": round(self.seconds, 3)}

    def lines(self):
        out = [f"{self.name}: {'PASS' if self.ok else 'FAIL'} {self.counts()}"]
        for c in self.checks:
            extra = f"  ({c['detail']})" if "detail" in c and c["status"] != "pass" else ""
            out.append(f"  [{c['status']}] {c['check']}{extra}")
        return out


def _timed(fn):
    def wrapper(*args, **kw):
        t0 = time.perf_counter()
        rep = fn(*args, **kw)
        rep.seconds = time.perf_counter() - t0
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


# ---------------------------------------------------------------------------
# closed immersions
# ---------------------------------------------------------------------------

@_timed
def check_closed_immersion(hom: RingHom, sections: dict, p: int, n: int,
                           samples: int = 20, seed: int = 0) -> SuiteReport:
    """W_n(A) -> W_n(B) is surjective when A -> B is, lifting componentwise.

    ``sections`` maps each generator of B to a preimage in A (as anything
    ``A.elem`` accepts). Random vectors of W_n(B) are lifted by substituting
    the sections into each component and mapped back.
    """
    A, B = hom.domain, hom.codomain
    rep = SuiteReport(f"closed-immersion {A} -> {B}", seed)
    lift = RingHom(B.__class__(A.base, B.vars, ()) if B.relations else B, A,
                   [A.elem(sections[v]) for v in B.vars], check=False)
    gens_ok = all(hom(lift(B.gen(v).value)) == B.gen(v) for v in B.vars)
    rep.add("sections are preimages of the generators", gens_ok)
    WA, WB = WittCtx(p, n, A), WittCtx(p, n, B)
    rng = np.random.default_rng(seed)
    hit = 0
    witness = None
    for _ in range(samples):
        v = WB.random(rng, degree=3, bound=5, terms=3)
        pre = WittVec(WA, tuple(lift(c.value) for c in v.comps))
        img = WittVec(WB, tuple(hom(c) for c in pre.comps))
        if img == v:
            hit += 1
        elif witness is None:
            witness = str(v)
    rep.add(f"W_{n} lifts {samples} random vectors", hit == samples, f"{hit}/{samples}", witness)
    # the induced map is a ring map: check on one pair
    u, w = WA.random(rng, degree=2, bound=3, terms=2), WA.random(rng, degree=2, bound=3, terms=2)
    Wh = lambda x: WittVec(WB, tuple(hom(c) for c in x.comps))  # noqa: E731
    rep.add("W_n(h) respects + and *", Wh(u + w) == Wh(u) + Wh(w) and Wh(u * w) == Wh(u) * Wh(w))
    return rep


def closed_immersion_corpus(p: int, n: int, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("closed-immersion", seed)
    Zx = free_ring("x")
    Q = presented_ring(ZZ, ["x"], [f"x^2-{p}*x"])
    cases = [
        (RingHom.by_names(Zx, Q), {"x": "x"}),
        (RingHom.identity(Zx), {"x": "x"}),
        (RingHom(Zx, Z, [0]), {}),
    ]
    for h, sec in cases:
        rep.merge(check_closed_immersion(h, sec, p, n, seed=seed), prefix=f"{h.domain} -> {h.codomain}")
    return rep


# ---------------------------------------------------------------------------
# socle of F_p ⊗ W_n(Z)
# ---------------------------------------------------------------------------

def _standard_basis(R: FPRing, max_degree: int = 6):
    """Normal-form monomials of an Artinian presentation (all of degree <= max_degree)."""
    nv = len(R.vars)
    basis = []
    for d in range(max_degree + 1):
        found = False
        for e in iproduct(range(d + 1), repeat=nv):
            if sum(e) != d:
                continue
            m = Poly(R.vars, {e: 1}, R.coeff_base)
            nf = R.normal_form(m)
            if nf == m:
                basis.append(e)
                found = True
        if not found and d > 0:
            return basis
    raise ValueError(f"{R} does not look Artinian up to degree {max_degree}")


@_timed
def check_socle(p: int, n: int) -> SuiteReport:
    """dim_F_p of the socle of F_p ⊗ W_n(Z), by linear algebra over F_p."""
    rep = SuiteReport(f"socle p={p} n={n}")
    R, prep = wittring_presentation_Z(p, n, samples=5)
    rep.add("presentation of W_n(Z) verified", prep.ok)
    F = mod_fiber(R, p)
    basis = _standard_basis(F)
    idx = {e: k for k, e in enumerate(basis)}
    rows = []
    for v in F.vars:
        x = F.gen(v)
        mat = [[0] * len(basis) for _ in basis]
        for k, e in enumerate(basis):
            img = F.normal_form(x.value * Poly(F.vars, {e: 1}, F.coeff_base))
            for e2, c in img.terms():
                mat[idx[e2]][k] = int(c) % p
        rows.extend(mat)
    soc = nullspace_mod_p(rows, p, len(basis)) if rows else [[1]]
    dim = len(soc)
    expected = n if n >= 1 else 1
    rep.add("F_p-dimension of F_p ⊗ W_n(Z)", len(basis) == n + 1, f"{len(basis)}")
    rep.add(f"socle dimension is {expected}", dim == expected, f"{dim}")
    rep.add("Gorenstein exactly when n <= 1", (dim == 1) == (n <= 1), "Gorenstein" if dim == 1 else "not Gorenstein")
    rep.socle_dimension = dim
    return rep


# ---------------------------------------------------------------------------
# Teichmüller lifts of regular sequences
# ---------------------------------------------------------------------------

def _slice_monomials(R: FPRing, D: int):
    nv = len(R.vars)
    out = []
    for e in iproduct(range(D + 1), repeat=nv):
        if sum(e) <= D:
            m = Poly(R.vars, {e: 1}, R.coeff_base)
            if R.normal_form(m) == m:
                out.append(m)
    return out or [Poly.const(1, R.vars, R.coeff_base)]


def _injective_on_slice(R: FPRing, a, D: int) -> tuple[bool, int, int]:
    mons = _slice_monomials(R, D)
    cols = {}
    rows = []
    for m in mons:
        img = R.normal_form(a * m)
        row = {}
        for e, c in img.terms():
            row[cols.setdefault(e, len(cols))] = int(c)
        rows.append(row)
    M = [[r.get(c, 0) for c in range(len(cols))] for r in rows]
    rk = rank_q(M, len(cols)) if cols else 0
    return rk == len(mons), rk, len(mons)


@_timed
def check_teich_regular(A: FPRing, seq, p: int, n: int, degree_bound: int = 4,
                        samples: int = 5, seed: int = 0) -> SuiteReport:
    """Multiplication by [a] is injective on a degree-bounded slice of W_n(A).

    [a]·(v_0, ..., v_n) = (a v_0, a^p v_1, ..., a^(p^n) v_n), so injectivity
    reduces to each a^(p^i) being a non-zero-divisor on the slice; the
    componentwise formula itself is checked against Witt multiplication.
    Later elements of the sequence are tested on W_n(A/(earlier elements)).
    """
    rep = SuiteReport(f"teich-regular {A} seq={list(map(str, seq))}", seed)
    if A.coeff_base != ZZ or not A.confluent:
        raise PresentationOnly("slice linear algebra needs a confluent ring over Z")
    rng = np.random.default_rng(seed)
    R = A
    for k, a in enumerate(seq):
        ae = R.elem(a)
        W = WittCtx(p, n, R)
        ta = W.teich(ae)
        formula = True
        for _ in range(samples):
            v = W.random(rng, degree=2, bound=4, terms=2)
            prod = ta * v
            formula &= all(c == ae ** (p ** i) * x for i, (c, x) in enumerate(zip(prod.comps, v.comps)))
        rep.add(f"[{a}]·v is componentwise a^(p^i) v_i", formula)
        inj = True
        detail = []
        for i in range(n + 1):
            ok, rk, dim = _injective_on_slice(R, (ae ** (p ** i)).value, degree_bound)
            inj &= ok
            detail.append(f"i={i}: rank {rk}/{dim}")
        rep.add(f"[{a}] injective on the degree<={degree_bound} slice of W_{n}({R})", inj, "; ".join(detail))
        if k + 1 < len(seq):
            R = FPRing(R.base, R.vars, list(R.relations) + [R.poly(a)])
            if not R.confluent:
                rep.skip("rest of the sequence", f"no confluent presentation for {R}")
                break
    rep.degree_bound = degree_bound
    return rep


# ---------------------------------------------------------------------------
# W_n(Z) is not normal
# ---------------------------------------------------------------------------

@_timed
def check_not_normal(p: int, n: int = 1) -> SuiteReport:
    """Zero divisors in W_n(Z) with connected spectrum (no idempotents besides 0, 1).

    A normal noetherian ring is a finite product of normal domains, so zero
    divisors without nontrivial idempotents rule normality out. For n = 0 the
    ring is Z and the suite checks the absence of zero divisors instead.
    """
    rep = SuiteReport(f"not-normal p={p} n={n}")
    W = WittCtx(p, n, Z)
    if n == 0:
        rep.add("W_0(Z) = Z has no zero divisors", all(
            not (W.from_int(a) * W.from_int(b)).is_zero() for a in range(1, 6) for b in range(-5, 6) if b))
        return rep
    v1 = versch_one(W, 1)
    other = v1 - W.from_int(p)
    rep.add("V(1)^2 = p·V(1)", v1 * v1 == W.from_int(p) * v1, f"V(1)^2 = {v1 * v1}")
    rep.add("V(1)·(V(1) - p) = 0 with both factors nonzero",
            (v1 * other).is_zero() and not v1.is_zero() and not other.is_zero(),
            f"V(1) = {v1}, V(1) - p = {other}")
    idem = []
    for bits in iproduct((0, 1), repeat=n + 1):
        try:
            W.from_ghost([Z.from_int(b) for b in bits])
        except NotInGhostImage:
            continue
        idem.append(bits)
    rep.add("only idempotents are 0 and 1", sorted(idem) == [(0,) * (n + 1), (1,) * (n + 1)], str(idem))
    rep.add("reduced: the ghost map into Z^(n+1) is injective on a sample",
            all(not W.ghost(W.vec(list(c))).is_zero() for c in iproduct(range(-2, 3), repeat=n + 1) if any(c)))
    return rep


# ---------------------------------------------------------------------------
# counterexamples
# ---------------------------------------------------------------------------

SMALL_PRIMES = (2, 3, 5, 7)


@_timed
def counterexample_suite(p: int, others=None) -> SuiteReport:
    """Flatness, surjectivity and integrality failures of Λ_1⊙(-) at p."""
    rep = SuiteReport(f"counterexamples p={p}")
    others = [q for q in (others or SMALL_PRIMES) if q != p]
    # (i) flatness: Λ_1⊙Z[x]/(x^2 - px)
    A = presented_ring(ZZ, ["x"], [f"x^2-{p}*x"])
    J = jet_presentation(JetCtx(p, 1, A)).ring
    Fp = mod_fiber(J, p)
    x = Fp.gen("x")
    rep.add("flatness: x^2 = 0 and x != 0 in the F_p-fiber", (x * x).is_zero() and not x.is_zero())
    rep.add("flatness: F_p-fiber ideal is (x^2)", same_ideal(Fp, ["x^2"]),
            "; ".join(str(r) for r in Fp.relations))
    counts = {q: count_points(J, q) for q in others}
    rep.add("flatness: 4 points over F_q, q != p", all(c == 4 for c in counts.values()), str(counts))
    # (ii) surjectivity: Λ_1⊙Z[x]/(x^2 - p)
    A2 = presented_ring(ZZ, ["x"], [f"x^2-{p}"])
    J2 = jet_presentation(JetCtx(p, 1, A2)).ring
    c2 = count_points(J2, p)
    rep.add("surjectivity: no F_p-points", c2 == 0, str(c2))
    # (iii) integrality: Λ_1⊙(Z × Z)
    P, _, _ = product_ring(Z, Z)
    J3 = jet_presentation(JetCtx(p, 1, P)).ring
    cp = count_points(J3, p)
    cq = {q: count_points(J3, q) for q in others}
    rep.add("integrality: 2 points over F_p", cp == 2, str(cp))
    rep.add("integrality: 4 points over F_q, q != p", all(c == 4 for c in cq.values()), str(cq))
    for what in ("quasi-compactness", "separatedness", "universal closedness",
                 "noetherianness over fields without a finite p-basis"):
        rep.skip(what, "no finite computation; not tested")
    return rep


# ---------------------------------------------------------------------------
# étale fiber products
# ---------------------------------------------------------------------------

def _iso_on_generators(f: RingHom, g: RingHom) -> bool:
    A, B = f.domain, f.codomain
    return (all(img == A.gen(v) for v, img in zip(A.vars, f.then(g).images))
            and all(img == B.gen(v) for v, img in zip(B.vars, g.then(f).images)))


@_timed
def check_etale_fiber_products(A: FPRing, f, g, p: int, n: int, samples: int = 5,
                               seed: int = 0) -> SuiteReport:
    """W_n(A[1/fg]) ≅ W_n(A)[1/[f][g]] ≅ W_n(A[1/f])[1/[g]].

    The three presentations come from :func:`witt_localized`; isomorphisms are
    checked on generators and compared on ghost components of random vectors.
    """
    rep = SuiteReport(f"etale-fiber-products {A} f={f} g={g}", seed)
    fp, gp = A.poly(f), A.poly(g)
    W = WittCtx(p, n, A)
    rep.add("[fg] = [f][g]", W.teich(A.elem(fp * gp)) == W.teich(A.elem(fp)) * W.teich(A.elem(gp)))
    Lfg = witt_localized(A, fp * gp, p, n)                 # W_n(A)[1/[fg]]
    Lf = witt_localized(A, fp, p, n, name="u")
    Lfg2 = witt_localized(Lf.ring, gp.with_vars(Lf.ring.vars), p, n, name="v")   # W_n(A[1/f])[1/[g]]
    R = localize(A, fp * gp, "w")                          # A[1/fg]
    B1, B2 = Lfg.ring, Lfg2.ring
    nA = len(A.vars)
    u0 = B1.vars[nA]
    # B1 -> R and back
    to_R = RingHom(B1, R, [R.gen(v) for v in A.vars] + [R.gen("w")] + [R.zero()] * n, check=True)
    from_R = RingHom(R, B1, [B1.gen(v) for v in A.vars] + [B1.gen(u0)], check=True)
    rep.add("W_n(A)[1/[fg]] component ring ≅ A[1/fg]", _iso_on_generators(to_R, from_R))
    # B1 -> B2: 1/fg = (1/f)(1/g);  B2 -> B1: 1/f = g/(fg), 1/g = f/(fg)
    uf, vg = Lf.ring.vars[nA], B2.vars[len(Lf.ring.vars)]
    B1_to_B2 = RingHom(B1, B2, [B2.gen(v) for v in A.vars] + [B2.gen(uf) * B2.gen(vg)] + [B2.zero()] * n,
                       check=True)
    imgs = [B1.gen(v) for v in A.vars] + [B1.elem(gp.with_vars(B1.vars)) * B1.gen(u0)] + [B1.zero()] * n
    imgs += [B1.elem(fp.with_vars(B1.vars)) * B1.gen(u0)] + [B1.zero()] * n
    B2_to_B1 = RingHom(B2, B1, imgs, check=True)
    rep.add("W_n(A[1/f])[1/[g]] ≅ W_n(A)[1/[fg]] on generators", _iso_on_generators(B1_to_B2, B2_to_B1))
    rng = np.random.default_rng(seed)
    C1, C2, CR = Lfg.ctx, Lfg2.ctx, WittCtx(p, n, R)
    ghost_ok = True
    for _ in range(samples):
        v = C1.random(rng, degree=2, bound=3, terms=2)
        w2 = WittVec(C2, tuple(B1_to_B2(c) for c in v.comps))
        wr = WittVec(CR, tuple(to_R(c) for c in v.comps))
        g1 = [B1_to_B2(e) for e in C1.ghost(v).entries]
        ghost_ok &= all(a == b for a, b in zip(C2.ghost(w2).entries, g1))
        ghost_ok &= all(a == to_R(b) for a, b in zip(CR.ghost(wr).entries, C1.ghost(v).entries))
    rep.add("ghost components agree under the isomorphisms", ghost_ok)
    inv_img = WittVec(C2, tuple(B1_to_B2(c) for c in Lfg.inverse.comps))
    rep.add("[fg]^-1 maps to [f]^-1 [g]^-1", inv_img == WittVec(C2, tuple(
        B2.elem(c.value.with_vars(B2.vars)) for c in Lf.inverse.comps)) * Lfg2.inverse)
    return rep


# ---------------------------------------------------------------------------
# suite registry
# ---------------------------------------------------------------------------

def _suite_socle(p, n, seed):
    rep = SuiteReport("socle", seed)
    for k in sorted({0, 1, 2, 3, n}):
        rep.merge(check_socle(p, k), prefix=f"n={k}")
    return rep


def _suite_teich(p, n, seed):
    rep = SuiteReport("teich-regular", seed)
    Zx = free_ring("x")
    rep.merge(check_teich_regular(Zx, ["x"], p, n, 4, seed=seed), prefix="Z[x], (x)")
    rep.merge(check_teich_regular(Z, [p], p, n, 1, seed=seed), prefix=f"Z, ({p})")
    rep.merge(check_teich_regular(free_ring("x y"), ["x", "y"], p, n, 3, seed=seed), prefix="Z[x,y], (x,y)")
    zero = check_teich_regular(Zx, ["0"], p, n, 3, seed=seed)
    rep.add("zero element is correctly reported as not regular", not zero.ok)
    return rep


def _suite_not_normal(p, n, seed):
    rep = SuiteReport("not-normal", seed)
    for k in sorted({0, 1, max(n, 1)}):
        rep.merge(check_not_normal(p, k), prefix=f"n={k}")
    return rep


def _suite_counter(p, n, seed):
    return counterexample_suite(p)


def _suite_etale(p, n, seed):
    rep = SuiteReport("etale-fiber-products", seed)
    Zt = free_ring("t")
    for f, g in (("t", "t+1"), ("t", "t"), ("t", "1")):
        rep.merge(check_etale_fiber_products(Zt, f, g, p, n, seed=seed), prefix=f"f={f}, g={g}")
    return rep


def _suite_equalizer(p, n, seed):
    from .geometry import coequalizer_check
    rep = SuiteReport("alpha-equalizer", seed)
    for A in (Z, free_ring("x"), presented_ring(ZZ, ["x"], [f"x^2-{p}*x"])):
        r = coequalizer_check(A, p, n, trials=30, seed=seed)
        rep.add(f"{A}: round trips {r['roundtrip_passed']}/30, rejections {r['noncongruent_rejected']}/30",
                r["ok"], witness=r["failures"] or None)
    return rep


def _suite_blowup(p, n, seed):
    from .geometry import blowup_vs_jet_iso, coghost_away_from_p
    rep = SuiteReport("blowup", seed)
    for A in (free_ring("x"), free_ring("x y"), Z):
        for k in sorted({0, 1, n}):
            try:
                r = blowup_vs_jet_iso(A, p, k)
                rep.add(f"B ≅ Λ_{k + 1}⊙{A}", r["ok"])
            except WittkitError as exc:
                rep.add(f"B ≅ Λ_{k + 1}⊙{A}", False, witness=str(exc))
    for k in sorted({0, 1, 2, n}):
        r = coghost_away_from_p(free_ring("x"), p, k)
        rep.add(f"co-ghost over Z[1/{p}] invertible, n={k}", r["ok"])
    return rep


def _suite_p1(p, n, seed):
    from .geometry import global_sections_P1, projective_line, projective_space, witt_space
    rep = SuiteReport("witt-space", seed)
    for X in (projective_line(), projective_space(2)):
        try:
            witt_space(X, p, n, seed=seed)
            rep.add(f"W_{n}({X}) transitions and cocycles", True)
        except WittkitError as exc:
            rep.add(f"W_{n}({X}) transitions and cocycles", False, witness=str(exc))
    r = global_sections_P1(p, n, 3, seed=seed)
    rep.add(f"H^0 of W_{n}(P^1) has rank {n + 1} with generators V^i(1)", r["ok"] and r["rank"] == n + 1,
            f"rank {r['rank']}")
    return rep


def _suite_closed(p, n, seed):
    return closed_immersion_corpus(p, n, seed)


SUITES = {
    "closed-immersion": _suite_closed,
    "socle": _suite_socle,
    "teich-regular": _suite_teich,
    "not-normal": _suite_not_normal,
    "counterexamples": _suite_counter,
    "etale-fiber-products": _suite_etale,
    "alpha-equalizer": _suite_equalizer,
    "blowup": _suite_blowup,
    "witt-space": _suite_p1,
}


def suite_seeds(names, seed: int) -> dict:
    """Independent per-suite seeds derived from the master seed."""
    children = np.random.SeedSequence(seed).spawn(len(names))
    return {name: int(c.generate_state(1)[0]) for name, c in zip(names, children)}


def run_suite(name: str, p: int, n: int, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or 'all'")
    t0 = time.perf_counter()
    sub = suite_seeds(list(SUITES), seed)[name]
    try:
        rep = SUITES[name](p, n, sub)
    except (VerificationFailed, PresentationOnly) as exc:
        rep = SuiteReport(name, sub)
        rep.add("suite raised", False, witness=str(exc))
    rep.name = name
    rep.seed = sub
    rep.seconds = time.perf_counter() - t0
    return rep


def run_all(p: int, n: int, seed: int = 0) -> list[SuiteReport]:
    return [run_suite(name, p, n, seed) for name in SUITES]


__all__ = ["SuiteReport", "check_closed_immersion", "check_socle", "check_teich_regular", "check_not_normal",
           "counterexample_suite", "check_etale_fiber_products", "closed_immersion_corpus", "SUITES",
           "run_suite", "run_all", "suite_seeds"]
