"""The two situations where W_n(A) gets an explicit finite presentation.

* W_n(Z) = Z[x_1..x_n]/(x_i x_j - p^i x_j, i <= j) with x_i = V^i(1);
* W_n(A[1/f]), i.e. W_n(A) with the Teichmüller lift [f] inverted.

Both come with a verification report computed by Witt arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import PresentationOnly, VerificationFailed
from ..poly import Poly
from ..rings import FPRing, RingHom, Z, fresh_name
from ..scalars import ZZ
from .vectors import WittCtx, WittVec, integer_witt_components


def versch_one(W: WittCtx, i: int) -> WittVec:
    """V^i(1) in W_n(A)."""
    comps = [W.ring.zero()] * (W.n + 1)
    if i <= W.n:
        comps[i] = W.ring.one()
    return WittVec(W, tuple(comps))


@dataclass
class PresentationReport:
    ring: FPRing
    relations_checked: list = field(default_factory=list)
    spanning: dict = field(default_factory=dict)
    ok: bool = True

    def as_dict(self):
        return {"ring": str(self.ring), "relations": [r for r, _ in self.relations_checked],
                "relations_ok": all(ok for _, ok in self.relations_checked),
                "spanning": self.spanning, "ok": self.ok}


def wittring_presentation_Z(p: int, n: int, samples: int = 20, seed: int = 0):
    """Presentation of W_n(Z), verified by Witt arithmetic.

    Checks V^i(1) V^j(1) = p^i V^j(1) for 1 <= i <= j <= n, and that
    1, V(1), ..., V^n(1) span W_n(Z): the ghost images are triangular with
    diagonal p^i, and random vectors decompose with integer coefficients.
    """
    names = tuple(f"x{i}" for i in range(1, n + 1))
    rels, rules = [], []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            xi, xj = Poly.var(f"x{i}", names), Poly.var(f"x{j}", names)
            rels.append(xi * xj - xj * p ** i)
            rules.append((xi * xj, xj * p ** i))
    R = FPRing(ZZ, names, rels, rewrite=rules or None)
    rep = PresentationReport(R)
    W = WittCtx(p, n, Z)
    vs = [versch_one(W, i) for i in range(n + 1)]  # vs[0] = 1
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            ok = vs[i] * vs[j] == W.from_int(p ** i) * vs[j]
            rep.relations_checked.append((f"x{i}*x{j}-{p ** i}*x{j}", ok))
            rep.ok &= ok
    # spanning: decompose random vectors as sum c_i V^i(1) through ghosts
    rng = np.random.default_rng(seed)
    good = 0
    for _ in range(samples):
        v = W.vec([int(c) for c in rng.integers(-9, 10, size=n + 1)])
        w = [int(e.value.constant_value()) for e in W.ghost(v).entries]
        coeffs, okv = [], True
        prev = 0
        for i in range(n + 1):
            diff = w[i] - prev
            if diff % p ** i:
                okv = False
                break
            coeffs.append(diff // p ** i)
            prev = w[i]
        if okv:
            total = W.zero()
            for c, b in zip(coeffs, vs):
                total = total + W.from_int(c) * b
            okv = total == v
        good += okv
    rep.spanning = {"diagonal": [p ** i for i in range(n + 1)], "samples": samples, "decomposed": good}
    rep.ok &= good == samples
    return R, rep


# ---------------------------------------------------------------------------
# localization at a Teichmüller lift
# ---------------------------------------------------------------------------

@dataclass
class LocalizedWitt:
    base: FPRing          # A
    f: Poly
    ring: FPRing          # component ring A[u_0..u_n]/(..., u_0 f - 1, u_i f^(p^i))
    hom: RingHom          # A -> ring
    ctx: WittCtx          # W_n(ring) = W_n(A[1/f])
    inverse: WittVec      # the vector u = [f]^(-1)
    report: dict


def witt_localized(A: FPRing, f, p: int, n: int, name: str = "u") -> LocalizedWitt:
    """W_n(A[1/f]) as W_n(A) with [f] inverted.

    A new Witt vector u = (u_0, ..., u_n) is adjoined with the componentwise
    relations of u * [f] = 1, namely u_0 f - 1 and u_i f^(p^i) for i >= 1
    (multiplying by a Teichmüller lift scales component i by f^(p^i)).
    The report certifies the relations by Witt arithmetic and compares ghost
    components with the entrywise inverse of gh([f]).
    """
    if not A.confluent:
        raise PresentationOnly(f"{A} has no confluent rewrite system")
    fp = A.poly(f)
    us = []
    taken = set(A.vars)
    for i in range(n + 1):
        v = fresh_name(taken, f"{name}{i}" if n else name)
        taken.add(v)
        us.append(v)
    vars = A.vars + tuple(us)
    F = fp.with_vars(vars)
    rels = [r.with_vars(vars) for r in A.relations]
    rels.append(Poly.var(us[0], vars, A.base) * F - 1)
    for i in range(1, n + 1):
        rels.append(Poly.var(us[i], vars, A.base) * F ** (p ** i))
    B = FPRing(A.base, vars, rels)
    if not B.confluent:
        raise PresentationOnly(f"no confluent rewrite system for {B}")
    hom = RingHom.by_names(A, B)
    W = WittCtx(p, n, B)
    u = W.vec([B.gen(v) for v in us])
    tf = W.teich(B.elem(F))
    report = {"relations": [str(r) for r in rels[len(A.relations):]]}
    report["u_times_teich_f_is_one"] = (u * tf) == W.one()
    gu = W.ghost(u).entries
    gf = W.ghost(tf).entries
    report["ghost_inverse"] = all((a * b) == 1 for a, b in zip(gu, gf))
    report["higher_components_vanish"] = all(B.gen(v).is_zero() for v in us[1:])
    report["ok"] = report["u_times_teich_f_is_one"] and report["ghost_inverse"]
    if not report["ok"]:
        raise VerificationFailed("localized Witt presentation failed its ghost check", witness=report)
    return LocalizedWitt(A, fp, B, hom, W, u, report)


def localization_density_check(loc: LocalizedWitt, degree_bound: int = 3, samples: int = 50, seed: int = 0):
    """Every vector over A[1/f] (bounded degree) is [f]^(-k) times a vector over A.

    Random vectors with components of degree <= bound in the generators of
    A[1/f] are multiplied by [f]^k for increasing k until all components lie
    in the image of A (normal form free of the inverse variables).
    """
    B, W = loc.ring, loc.ctx
    inv = set(B.vars) - set(loc.base.vars)
    rng = np.random.default_rng(seed)
    F = B.elem(loc.f.with_vars(B.vars))
    tf = W.teich(F)
    worst = 0
    for _ in range(samples):
        v = W.random(rng, degree=degree_bound, bound=4, terms=3)
        x = v
        for k in range(0, 4 * degree_bound * (W.p ** W.n) + 2):
            if all(not (c.value.used_vars() & inv) for c in x.comps):
                worst = max(worst, k)
                break
            x = x * tf
        else:
            return {"ok": False, "witness": str(v)}
    return {"ok": True, "samples": samples, "max_power": worst}


__all__ = ["wittring_presentation_Z", "witt_localized", "LocalizedWitt", "localization_density_check",
           "versch_one", "PresentationReport", "integer_witt_components"]
