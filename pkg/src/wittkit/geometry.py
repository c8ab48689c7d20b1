"""Schemes glued from affine charts along principal opens, and constructions on them.

* :class:`GluedScheme` with checked transition maps and cocycles;
* :func:`witt_space`, applying W_n chartwise (overlaps become W_n(A)[1/[f]]);
* :func:`global_sections_P1`, a degree-bounded H^0 probe of W_n(P^1);
* :func:`coequalizer_check`, the α-equalizer in affine form;
* :func:`affine_modification` / :func:`blowup_vs_jet_iso`, jet spaces as an
  affine modification of Λ_n⊙A ⊗ A;
* :func:`coghost_away_from_p`, the total co-ghost map over Z[1/p].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product as iproduct

import numpy as np

from .errors import (CocycleFailed, CongruenceFailed, IsoFailed, NotDivisible,
                     PresentationOnly, VerificationFailed)
from .jets import JetCtx, jet_name, jet_presentation, phi_apply, rcgh_lift
from .linalg import int_det, integer_kernel
from .poly import Poly
from .rings import FPRing, RingElem, RingHom, Z, fresh_name, free_ring, localize, tensor_power
from .scalars import ZZ, Scalar
from .witt.presentations import LocalizedWitt, versch_one, witt_localized
from .witt.vectors import WittCtx, WittVec, random_ring_elem

INVERSE_SEARCH_DEGREE = 4


# ---------------------------------------------------------------------------
# glued schemes
# ---------------------------------------------------------------------------

@dataclass
class Overlap:
    i: int
    j: int
    f: Poly            # f_ij, a function on chart i
    ring: FPRing       # U_ij = chart_i[1/f_ij]
    inverse_var: str   # the generator of U_ij inverting f_ij


def _find_inverse(U: FPRing, g: RingElem, hint=None) -> RingElem:
    """An inverse of g in U: the hint if given, else a search over ±monomials."""
    if not U.confluent:
        raise PresentationOnly(f"cannot invert in {U}: no confluent rewrite system")
    if hint is not None:
        h = U.elem(hint)
        if (h * g - 1).is_zero():
            return h
        raise VerificationFailed(f"{hint} is not an inverse of {g}")
    nv = len(U.vars)
    for d in range(INVERSE_SEARCH_DEGREE + 1):
        for e in iproduct(range(d + 1), repeat=nv):
            if sum(e) != d:
                continue
            m = U.elem(Poly(U.vars, {e: 1}, U.coeff_base))
            for c in (1, -1):
                if (m * g * c - 1).is_zero():
                    return m * c
    raise VerificationFailed(f"no monomial inverse of {g} in {U}; supply one explicitly")


class GluedScheme:
    """Charts Spec A_i glued along principal opens D(f_ij).

    ``overlaps`` is a list of dicts in the scheme-JSON layout::

        {"i": 0, "j": 1, "f_ij": "t", "f_ji": "s",
         "transition": {"t": "u"},            # chart-i generators in A_j[1/f_ji]
         "inverse_transition": {"s": "u"}}    # chart-j generators in A_i[1/f_ij]

    Inside each localized ring the inverse of the chosen function is called
    ``u`` (or the value of ``"inverse_name"``). ``transitions[(i, j)]`` is the
    ring map U_ji -> U_ij of the gluing data.
    """

    def __init__(self, charts, overlaps=(), name: str | None = None, check: bool = True):
        self.charts = list(charts)
        self.name = name
        self.entries = [dict(e) for e in overlaps]
        self.opens: dict[tuple[int, int], Overlap] = {}
        self.transitions: dict[tuple[int, int], RingHom] = {}
        raw: dict[tuple[int, int], dict] = {}
        hints: dict[tuple[int, int], str] = {}
        for e in self.entries:
            i, j = int(e["i"]), int(e["j"])
            if i == j or not (0 <= i < len(self.charts) and 0 <= j < len(self.charts)):
                raise ValueError(f"bad overlap indices {(i, j)}")
            uname = e.get("inverse_name", "u")
            self._open(i, j, e["f_ij"], uname)
            self._open(j, i, e["f_ji"], uname)
            if "transition" in e:
                raw[(j, i)] = e["transition"]           # images of chart-i generators in U_ji
            if "inverse_transition" in e:
                raw[(i, j)] = e["inverse_transition"]   # images of chart-j generators in U_ij
            if "inverse_image" in e:
                hints[(j, i)] = e["inverse_image"]
        for (i, j), imgs in raw.items():
            # imgs: chart-j generators in U_ij; the map U_ji -> U_ij
            U_ij, U_ji = self.opens[(i, j)].ring, self.opens[(j, i)].ring
            gens = [U_ij.elem(imgs[v]) if v in imgs else U_ij.gen(v) for v in self.charts[j].vars]
            A_j = self.charts[j]
            g = RingHom(A_j, U_ij, gens, check=U_ij.confluent)(self.opens[(j, i)].f)
            inv = _find_inverse(U_ij, g, hints.get((i, j)))
            self.transitions[(i, j)] = RingHom(U_ji, U_ij, gens + [inv], check=True)
        for (i, j) in self.opens:
            if (i, j) not in self.transitions:
                raise ValueError(f"missing transition for overlap {(i, j)}")
        self.report = self.check() if check else {}

    def _open(self, i, j, f, uname):
        A = self.charts[i]
        fp = A.poly(f)
        u = fresh_name(A.vars, uname)
        self.opens[(i, j)] = Overlap(i, j, fp, localize(A, fp, u), u)

    def __repr__(self):
        return self.name or f"GluedScheme({len(self.charts)} charts, {len(self.entries)} overlaps)"

    def pairs(self):
        return sorted(self.opens)

    # -- verification ---------------------------------------------------------
    def check(self) -> dict:
        inv = {}
        for (i, j) in self.pairs():
            there, back = self.transitions[(j, i)], self.transitions[(i, j)]
            comp = there.then(back)            # U_ij -> U_ji -> U_ij
            U = self.opens[(i, j)].ring
            bad = [v for v, img in zip(U.vars, comp.images) if img != U.gen(v)]
            if bad:
                raise VerificationFailed(f"transitions {(i, j)} are not inverse on {bad}",
                                         witness={"pair": [i, j], "generators": bad})
            inv[f"{i},{j}"] = True
        cocycles = {}
        for i, j, k in permutations(range(len(self.charts)), 3):
            if {(i, j), (i, k), (j, k)} <= set(self.opens):
                self.cocycle(i, j, k)
                cocycles[f"{i},{j},{k}"] = True
        return {"transition_inverse": inv, "cocycle": cocycles, "ok": True}

    def triple_ring(self, i, j, k):
        """U_ijk = A_i[1/f_ij, 1/f_ik, 1/T_ij(f_jk)] with the embeddings of U_ij, U_ik, U_jk."""
        A = self.charts[i]
        Oij, Oik, Ojk = self.opens[(i, j)], self.opens[(i, k)], self.opens[(j, k)]
        taken = set(A.vars)
        a = fresh_name(taken, "a")
        taken.add(a)
        b = fresh_name(taken, "b")
        taken.add(b)
        w = fresh_name(taken, "w")
        vars = A.vars + (a, b, w)
        V = lambda s: Poly.var(s, vars, A.base)  # noqa: E731
        g = self.transitions[(i, j)](Ojk.f)
        g = g.value.compose({Oij.inverse_var: V(a)}, vars=vars, base=A.base)
        rels = [r.with_vars(vars) for r in A.relations]
        rels += [V(a) * Oij.f.with_vars(vars) - 1, V(b) * Oik.f.with_vars(vars) - 1, V(w) * g - 1]
        T = FPRing(A.base, vars, rels)
        if not T.confluent:
            raise PresentationOnly(f"triple overlap {(i, j, k)} has no confluent rewrite system")
        e_ij = RingHom(Oij.ring, T, [T.gen(v) for v in A.vars] + [T.gen(a)], check=True)
        e_ik = RingHom(Oik.ring, T, [T.gen(v) for v in A.vars] + [T.gen(b)], check=True)
        via_j = [e_ij(self.transitions[(i, j)](self.charts[j].gen(v).value)) for v in self.charts[j].vars]
        g_jk = RingHom(Ojk.ring, T, via_j + [T.gen(w)], check=True)
        return T, e_ij, e_ik, g_jk

    def cocycle(self, i, j, k) -> bool:
        """T_ij ∘ T_jk = T_ik on the generators of chart k, inside U_ijk."""
        T, e_ij, e_ik, g_jk = self.triple_ring(i, j, k)
        Ok = self.charts[k]
        for v in Ok.vars:
            x = Ok.gen(v).value
            r1 = e_ik(self.transitions[(i, k)](x))
            r2 = g_jk(self.transitions[(j, k)](x))
            if r1 != r2:
                raise CocycleFailed(f"cocycle fails on ({i},{j},{k}) at generator {v}",
                                    witness={"triple": [i, j, k], "generator": v,
                                             "direct": str(r1), "composite": str(r2)})
        return True


def affine_scheme(A: FPRing) -> GluedScheme:
    return GluedScheme([A], [], name=f"Spec {A}")


def disjoint_union(A: FPRing, B: FPRing) -> GluedScheme:
    return GluedScheme([A, B], [], name=f"Spec {A} ⊔ Spec {B}")


def projective_space(m: int, base: Scalar = ZZ) -> GluedScheme:
    """P^m with chart i = Spec base[x{k}_{i} : k != i] (x{k}_{i} standing for x_k/x_i)."""
    def name(k, i):
        return f"x{k}_{i}"
    charts = [free_ring([name(k, i) for k in range(m + 1) if k != i], base) for i in range(m + 1)]
    entries = []
    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            # on U_ji, with u = 1/x{i}_{j} = x_j/x_i: x_k/x_i = (x_k/x_j) u
            fwd = {name(k, i): ("u" if k == j else f"{name(k, j)}*u") for k in range(m + 1) if k != i}
            bwd = {name(k, j): ("u" if k == i else f"{name(k, i)}*u") for k in range(m + 1) if k != j}
            entries.append({"i": i, "j": j, "f_ij": name(j, i), "f_ji": name(i, j),
                            "transition": fwd, "inverse_transition": bwd})
    return GluedScheme(charts, entries, name=f"P^{m}")


def projective_line(base: Scalar = ZZ) -> GluedScheme:
    """P^1 = Spec Z[t] ∪ Spec Z[s], glued along s = 1/t."""
    return GluedScheme([free_ring("t", base), free_ring("s", base)],
                       [{"i": 0, "j": 1, "f_ij": "t", "f_ji": "s",
                         "transition": {"t": "u"}, "inverse_transition": {"s": "u"}}],
                       name="P^1")


# ---------------------------------------------------------------------------
# Witt spaces
# ---------------------------------------------------------------------------

def apply_hom(h: RingHom, ctx: WittCtx, v: WittVec) -> WittVec:
    """W_n(h), componentwise."""
    return WittVec(ctx, tuple(h(c) for c in v.comps))


@dataclass
class WittScheme:
    base: GluedScheme
    p: int
    n: int
    charts: list
    opens: dict
    transitions: dict
    report: dict = field(default_factory=dict)

    def transition(self, i: int, j: int, v: WittVec) -> WittVec:
        """W_n(U_ji) -> W_n(U_ij)."""
        return apply_hom(self.transitions[(i, j)], self.opens[(i, j)].ctx, v)

    def restrict(self, i: int, j: int, v: WittVec) -> WittVec:
        """W_n(A_i) -> W_n(A_i)[1/[f_ij]]."""
        loc = self.opens[(i, j)]
        return apply_hom(loc.hom, loc.ctx, v)


def _to_localized(O: Overlap, loc: LocalizedWitt) -> RingHom:
    """U = A[1/f] -> the component ring of W_n(A)[1/[f]] (the inverse goes to u_0)."""
    B = loc.ring
    u0 = B.vars[len(O.ring.vars) - 1]
    return RingHom(O.ring, B, [B.gen(v) for v in O.ring.vars[:-1]] + [B.gen(u0)], check=True)


def _from_localized(O: Overlap, loc: LocalizedWitt) -> RingHom:
    U = O.ring
    nA = len(U.vars) - 1
    imgs = [U.gen(v) for v in U.vars[:nA]] + [U.gen(O.inverse_var)] + [U.zero()] * (len(loc.ring.vars) - nA - 1)
    return RingHom(loc.ring, U, imgs, check=True)


def witt_space(X: GluedScheme, p: int, n: int, samples: int = 3, seed: int = 0) -> WittScheme:
    """W_n applied chartwise, with overlaps W_n(A_i)[1/[f_ij]] and induced transitions.

    The report re-checks the transitions (inverse pairs, ghost compatibility,
    Teichmüller lifts, inverses of [f]) and the cocycle condition on Witt
    vectors, all on generators plus a few random vectors.
    """
    rng = np.random.default_rng(seed)
    charts = [WittCtx(p, n, A) for A in X.charts]
    opens, to_loc, from_loc = {}, {}, {}
    for key, O in X.opens.items():
        loc = witt_localized(X.charts[key[0]], O.f, p, n, name=O.inverse_var)
        opens[key] = loc
        to_loc[key] = _to_localized(O, loc)
        from_loc[key] = _from_localized(O, loc)
    trans = {}
    for (i, j), T in X.transitions.items():
        # B_ji -> U_ji -> U_ij -> B_ij
        trans[(i, j)] = from_loc[(j, i)].then(T).then(to_loc[(i, j)])
        trans[(i, j)].verify()
    W = WittScheme(X, p, n, charts, opens, trans)
    report = {"p": p, "n": n, "charts": [str(c) for c in charts], "pairs": {}}
    for (i, j) in X.pairs():
        loc_ij, loc_ji = opens[(i, j)], opens[(j, i)]
        B_ij, B_ji = loc_ij.ring, loc_ji.ring
        T, S = trans[(i, j)], trans[(j, i)]
        entry = {}
        back = S.then(T)
        entry["inverse_on_generators"] = all(img == B_ij.gen(v) for v, img in zip(B_ij.vars, back.images))
        vecs = [loc_ji.ctx.random(rng, degree=2, bound=3, terms=2) for _ in range(samples)]
        vecs = [apply_hom(loc_ji.hom, loc_ji.ctx, charts[j].random(rng, degree=2, bound=3, terms=2))
                for _ in range(samples)] + vecs
        entry["inverse_on_vectors"] = all(
            W.transition(j, i, W.transition(i, j, v)) == v for v in vecs)
        ghost_ok = True
        for v in vecs:
            lhs = loc_ij.ctx.ghost(W.transition(i, j, v)).entries
            rhs = [T(e) for e in loc_ji.ctx.ghost(v).entries]
            ghost_ok &= all(a == b for a, b in zip(lhs, rhs))
        entry["ghost_compatible"] = ghost_ok
        fji = B_ji.elem(loc_ji.f.with_vars(B_ji.vars))
        tf = loc_ji.ctx.teich(fji)
        entry["teich_of_f_maps_to"] = str(W.transition(i, j, tf))
        entry["teich_of_f_is_inverse_of_teich"] = W.transition(i, j, tf) == loc_ij.inverse
        img_inv = W.transition(i, j, loc_ji.inverse)
        entry["inverse_maps_to_inverse"] = img_inv * loc_ij.ctx.teich(T(fji)) == loc_ij.ctx.one()
        entry["teich_compatible"] = all(
            W.transition(i, j, loc_ji.ctx.teich(B_ji.gen(v))) == loc_ij.ctx.teich(T(B_ji.gen(v)))
            for v in X.charts[j].vars)
        report["pairs"][f"{i},{j}"] = entry
        for k in ("inverse_on_generators", "inverse_on_vectors", "ghost_compatible",
                  "inverse_maps_to_inverse", "teich_compatible"):
            if not entry[k]:
                raise VerificationFailed(f"Witt transition {(i, j)} failed {k}", witness=entry)
    cocycles = {}
    for i, j, k in permutations(range(len(X.charts)), 3):
        if not {(i, j), (i, k), (j, k)} <= set(X.opens):
            continue
        Tr, e_ij, e_ik, g_jk = X.triple_ring(i, j, k)
        ctxT = WittCtx(p, n, Tr)
        direct = from_loc[(i, k)].then(e_ik)
        via = from_loc[(j, k)].then(g_jk)
        for _ in range(samples):
            v = charts[k].random(rng, degree=2, bound=3, terms=2)
            r1 = apply_hom(direct, ctxT, W.transition(i, k, W.restrict(k, i, v)))
            r2 = apply_hom(via, ctxT, W.transition(j, k, W.restrict(k, j, v)))
            if r1 != r2:
                raise CocycleFailed(f"Witt cocycle fails on ({i},{j},{k})",
                                    witness={"triple": [i, j, k], "vector": str(v)})
        cocycles[f"{i},{j},{k}"] = True
    report["cocycle"] = cocycles
    report["ok"] = True
    W.report = report
    return W


# ---------------------------------------------------------------------------
# global sections of W_n(P^1), degree-bounded
# ---------------------------------------------------------------------------

def _coeff_rows(images, ring: FPRing, columns: dict):
    rows = []
    for img in images:
        nf = ring.normal_form(img)
        row = {}
        for e, c in nf.terms():
            row[columns.setdefault(e, len(columns))] = int(c)
        rows.append(row)
    return rows


def global_sections_P1(p: int, n: int, D: int = 3, samples: int = 30, seed: int = 0) -> dict:
    """Degree-bounded equalizer of the two restrictions W_n(Z[t]), W_n(Z[s]) -> W_n(overlap).

    The restriction maps act componentwise, so each component contributes the
    integer kernel of one linear map (polynomials of degree <= D in t and in s
    agreeing on the overlap). The resulting sections are then organised as a
    Z-module under Witt addition, with candidate generators V^i(1) whose ghost
    vectors form a triangular basis.
    """
    if D < 1:
        raise ValueError("degree bound must be >= 1")
    X = projective_line()
    W = witt_space(X, p, n, samples=2, seed=seed)
    loc0, loc1 = W.opens[(0, 1)], W.opens[(1, 0)]
    B0 = loc0.ring
    t, s = X.charts[0].gen("t"), X.charts[1].gen("s")
    left = [loc0.hom(t ** k).value for k in range(D + 1)]
    right = [W.transitions[(0, 1)](loc1.hom(s ** k)).value for k in range(D + 1)]
    columns = {}
    rows_l = _coeff_rows(left, B0, columns)
    rows_r = _coeff_rows(right, B0, columns)
    # unknowns (a_0..a_D, b_0..b_D); equation: sum a_k left_k - sum b_k right_k = 0
    ncols = 2 * (D + 1)
    M = [[0] * ncols for _ in columns]
    for k, row in enumerate(rows_l):
        for c, val in row.items():
            M[c][k] += val
    for k, row in enumerate(rows_r):
        for c, val in row.items():
            M[c][D + 1 + k] -= val
    kernel = integer_kernel(M, ncols)
    per_component = [[{"t_side": v[:D + 1], "s_side": v[D + 1:]} for v in kernel] for _ in range(n + 1)]
    constants_only = all(all(c == 0 for c in v[1:D + 1]) and all(c == 0 for c in v[D + 2:])
                         for v in kernel)
    ctx0 = W.charts[0]
    Wz = WittCtx(p, n, Z)
    gens = [versch_one(Wz, i) for i in range(n + 1)]
    G = [[int(e.value.constant_value()) for e in Wz.ghost(g).entries] for g in gens]
    # each generator is a section: equal restrictions from both charts
    gen_sections = True
    for g in gens:
        v0 = ctx0.vec([int(c.value.constant_value()) for c in g.comps])
        v1 = W.charts[1].vec([int(c.value.constant_value()) for c in g.comps])
        gen_sections &= W.restrict(0, 1, v0) == W.transition(0, 1, W.restrict(1, 0, v1))
    # every bounded section decomposes over the generators with integer coefficients
    rng = np.random.default_rng(seed)
    decomposed = 0
    tests = [tuple(int(c) for c in rng.integers(-6, 7, size=n + 1)) for _ in range(samples)]
    for comps in tests:
        v = Wz.vec(list(comps))
        w = [int(e.value.constant_value()) for e in Wz.ghost(v).entries]
        coeffs, prev, ok = [], 0, True
        for i in range(n + 1):
            if (w[i] - prev) % p ** i:
                ok = False
                break
            coeffs.append((w[i] - prev) // p ** i)
            prev = w[i]
        if ok:
            total = Wz.zero()
            for c, g in zip(coeffs, gens):
                total = total + Wz.from_int(c) * g
            ok = total == v
        decomposed += ok
    rank = len(kernel) * (n + 1) if constants_only else None
    return {
        "p": p, "n": n, "degree_bound": D,
        "component_kernel": kernel,
        "components": per_component,
        "constant_sections_only": constants_only,
        "rank": rank,
        "generators": [[str(c) for c in g.comps] for g in gens],
        "generator_names": ["1"] + [f"V^{i}(1)" if i > 1 else "V(1)" for i in range(1, n + 1)],
        "ghost_matrix": G,
        "ghost_index": abs(int_det(G)),
        "generators_are_sections": gen_sections,
        "decomposition": {"samples": samples, "decomposed": decomposed},
        "ok": constants_only and len(kernel) == 1 and gen_sections and decomposed == samples,
    }


# ---------------------------------------------------------------------------
# the α-equalizer
# ---------------------------------------------------------------------------

def coequalizer_check(A: FPRing, p: int, n: int, trials: int = 100, seed: int = 0,
                      degree: int = 3) -> dict:
    """alpha_section ∘ alpha = id on W_{n+1}(A), and non-congruent pairs are rejected."""
    if not A.confluent:
        raise PresentationOnly(f"{A} has no confluent rewrite system")
    rng = np.random.default_rng(seed)
    Wup, W = WittCtx(p, n + 1, A), WittCtx(p, n, A)
    pk = p ** (n + 1)
    roundtrip = 0
    failures = []
    for _ in range(trials):
        v = Wup.random(rng, degree=degree, bound=5, terms=3)
        w, a = Wup.alpha(v)
        try:
            ok = W.alpha_section(w, a) == v
        except CongruenceFailed:
            ok = False
        roundtrip += ok
        if not ok and len(failures) < 3:
            failures.append(str(v))
    rejected = 0
    for t in range(trials):
        w = W.random(rng, degree=degree, bound=5, terms=3)
        c = 1 if t == 0 else int(rng.integers(1, pk))
        off = A.from_int(c) + random_ring_elem(A, rng, degree=degree, bound=3, terms=2) * pk
        try:
            W.alpha_section(w, W.rgh_lift(w) + off)
        except CongruenceFailed:
            rejected += 1
        else:
            if len(failures) < 6:
                failures.append(f"accepted ({w}, rgh+{off})")
    return {"ring": str(A), "p": p, "n": n, "trials": trials, "seed": seed,
            "roundtrip_passed": roundtrip, "noncongruent_rejected": rejected,
            "failures": failures, "ok": roundtrip == trials and rejected == trials}


# ---------------------------------------------------------------------------
# jets as an affine modification
# ---------------------------------------------------------------------------

def _require_free(A: FPRing):
    if not A.is_free or A.base != ZZ:
        raise ValueError(f"{A} must be a free polynomial ring over Z")


@dataclass
class AffineModification:
    p: int
    n: int
    A: FPRing
    jet: JetCtx
    base_ring: FPRing               # Λ_n⊙A ⊗ A
    ideal: list                     # generators of I, polys over base_ring
    ring: FPRing                    # B
    structure: RingHom              # base_ring -> B
    second: dict                    # x -> name of 1⊗x
    divided: dict                   # x -> name of the divided variable
    report: dict = field(default_factory=dict)

    def as_dict(self):
        return {"p": self.p, "n": self.n, "A": str(self.A),
                "ideal": [str(g) for g in self.ideal],
                "B": {"vars": list(self.ring.vars), "relations": [str(r) for r in self.ring.relations]},
                "report": self.report}


def affine_modification(A: FPRing, p: int, n: int) -> AffineModification:
    """B = (Λ_n⊙A ⊗ A)[p^-(n+1) I] for I = (p^(n+1), 1⊗x - lift(rcgh(x)))."""
    _require_free(A)
    ctx = JetCtx(p, n, A)
    taken = set(ctx.vars)
    second, divided = {}, {}
    for x in A.vars:
        second[x] = fresh_name(taken, f"y_{x}")
        taken.add(second[x])
    for x in A.vars:
        divided[x] = fresh_name(taken, f"q_{x}")
        taken.add(divided[x])
    base_vars = ctx.vars + tuple(second[x] for x in A.vars)
    C = FPRing(ZZ, base_vars, ())
    pk = p ** (n + 1)
    lifts = {x: rcgh_lift(ctx, ctx.var(x)).with_vars(base_vars) for x in A.vars}
    ideal = [Poly.const(pk, base_vars)] + [Poly.var(second[x], base_vars) - lifts[x] for x in A.vars]
    vars = base_vars + tuple(divided[x] for x in A.vars)
    rels = [Poly.var(divided[x], vars) * pk - (Poly.var(second[x], vars) - lifts[x].with_vars(vars))
            for x in A.vars]
    B = FPRing(ZZ, vars, rels)
    if not B.confluent:
        raise PresentationOnly(f"no confluent rewrite system for {B}")
    struct = RingHom.by_names(C, B)
    # I·B ⊆ p^(n+1) B on generators: every generator's normal form is divisible
    containment = {}
    for g in ideal:
        nf = B.normal_form(struct(g).value)
        try:
            q = nf.exact_div(pk)
            containment[str(g)] = str(q)
        except NotDivisible:
            containment[str(g)] = None
    # monomial-basis certificate: B ≅ Z[jets, q] via 1⊗x -> p^(n+1) q + lift
    P = FPRing(ZZ, ctx.vars + tuple(divided[x] for x in A.vars), ())
    to_P = RingHom(B, P, [P.gen(v) if v in P.vars else
                          P.elem(Poly.var(divided[_key(second, v)], P.vars) * pk
                                 + lifts[_key(second, v)].compose(
                                     {y: Poly.const(0, P.vars) for y in second.values()}, vars=P.vars))
                          for v in B.vars], check=True)
    from_P = RingHom.by_names(P, B)
    basis_ok = (all(img == B.gen(v) for v, img in zip(B.vars, to_P.then(from_P).images))
                and all(img == P.gen(v) for v, img in zip(P.vars, from_P.then(to_P).images)))
    report = {"ideal_contains_p_power": True,
              "lifting_criterion": containment,
              "lifting_criterion_ok": all(v is not None for v in containment.values()),
              "torsion_free_certificate": "polynomial ring on " + ",".join(P.vars) if basis_ok else None,
              "torsion_free": basis_ok}
    return AffineModification(p, n, A, ctx, C, ideal, B, struct, second, divided, report)


def _key(d: dict, value):
    for k, v in d.items():
        if v == value:
            return k
    raise KeyError(value)


def blowup_vs_jet_iso(A: FPRing, p: int, n: int) -> dict:
    """The map B -> Λ_{n+1}⊙A (q_x -> t_{n+1}(x)) and its inverse, checked on generators."""
    mod = affine_modification(A, p, n)
    B = mod.ring
    up = JetCtx(p, n + 1, A)
    J = jet_presentation(up).ring
    pk = p ** (n + 1)
    imgs = {}
    quotients = {}
    for v in mod.jet.vars:
        imgs[v] = J.gen(v)
    for x in A.vars:
        top = phi_apply(up, up.var(x), n + 1)
        imgs[mod.second[x]] = J.elem(top)
        try:
            q = (top - rcgh_lift(mod.jet, mod.jet.var(x)).with_vars(up.vars)).exact_div(pk)
        except NotDivisible as exc:
            raise IsoFailed(f"lifting criterion fails for {x}: {exc}") from None
        imgs[mod.divided[x]] = J.elem(q)
        quotients[x] = q
    h = RingHom(B, J, [imgs[v] for v in B.vars], check=True)
    inv = {}
    for v in mod.jet.vars:
        inv[v] = B.gen(v)
    for x in A.vars:
        top = jet_name(x, n + 1)
        corr = quotients[x] - up.var(top)
        if top in corr.used_vars() or any(up._level[v] > n for v in corr.used_vars()):
            raise IsoFailed(f"divided variable for {x} is not triangular in {top}")
        corr_B = corr.compose({v: Poly.var(v, B.vars) for v in corr.vars if up._level[v] <= n}
                              | {v: Poly.const(0, B.vars) for v in corr.vars if up._level[v] > n}, vars=B.vars)
        inv[top] = B.gen(mod.divided[x]) - B.elem(corr_B)
    g = RingHom(J, B, [inv[v] for v in J.vars], check=True)
    for v, img in zip(B.vars, h.then(g).images):
        if img != B.gen(v):
            raise IsoFailed(f"inverse fails on generator {v} of B: {img}")
    for v, img in zip(J.vars, g.then(h).images):
        if img != J.gen(v):
            raise IsoFailed(f"inverse fails on generator {v} of the jet ring: {img}")
    return {"p": p, "n": n, "A": str(A), "ok": True,
            "forward": {v: str(i) for v, i in zip(B.vars, h.images)},
            "inverse": {v: str(i) for v, i in zip(J.vars, g.images)},
            "lifting_criterion_ok": mod.report["lifting_criterion_ok"],
            "torsion_free": mod.report["torsion_free"]}


def coghost_away_from_p(A: FPRing, p: int, n: int) -> dict:
    """Over Z[1/p], A^{⊗(n+1)} -> Λ_n⊙A (copy i of x -> φ^i x) is an isomorphism.

    The inverse is solved level by level: φ^j x = p^j δ^j x + (terms of lower
    level), so δ^j x = (x_j - R_j)/p^j with R_j already expressed in the copies.
    """
    _require_free(A)
    S = Scalar.inverted([p])
    ctx = JetCtx(p, n, A)
    T = tensor_power(FPRing(S, A.vars, ()), n + 1)
    J = FPRing(S, ctx.vars, ())
    fwd = [J.elem(phi_apply(ctx, ctx.var(x), i).change_base(S)) for i in range(n + 1) for x in A.vars]
    h = RingHom(T, J, fwd, check=True)
    inv: dict[str, Poly] = {}
    zeroT = Poly.const(0, T.vars, S)
    for j in range(n + 1):
        for x in A.vars:
            d = jet_name(x, j)
            rest = phi_apply(ctx, ctx.var(x), j) - ctx.var(d) * p ** j
            if any(ctx._level[v] >= j for v in rest.used_vars()) and j > 0:
                raise IsoFailed(f"φ^{j}({x}) is not triangular in {d}")
            images = [inv.get(v, zeroT) for v in ctx.vars]
            r = rest.change_base(S).compose(images, vars=T.vars, base=S) if ctx.vars else rest.change_base(S)
            inv[d] = (Poly.var(f"{x}_{j}", T.vars, S) - r).exact_div(p ** j)
    g = RingHom(J, T, [T.elem(inv[v]) for v in J.vars], check=True)
    for v, img in zip(T.vars, h.then(g).images):
        if img != T.gen(v):
            raise IsoFailed(f"inverse fails on {v}: {img}")
    for v, img in zip(J.vars, g.then(h).images):
        if img != J.gen(v):
            raise IsoFailed(f"inverse fails on {v}: {img}")
    return {"p": p, "n": n, "A": str(A), "base": str(S), "ok": True,
            "forward": {v: str(i) for v, i in zip(T.vars, h.images)},
            "inverse": {v: str(inv[v]) for v in J.vars}}


__all__ = ["GluedScheme", "Overlap", "WittScheme", "AffineModification", "affine_scheme", "disjoint_union",
           "projective_line", "projective_space", "witt_space", "apply_hom", "global_sections_P1",
           "coequalizer_check", "affine_modification", "blowup_vs_jet_iso", "coghost_away_from_p"]
