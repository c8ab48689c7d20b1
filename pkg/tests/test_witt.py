"""p-typical Witt vectors: universal polynomials, arithmetic, ghost maps, α, big Witt vectors."""
import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from oracles import from_ghost_int, ghost_int, to_sympy, universal_sympy
from wittkit import FPRing, Scalar, WittCtx, Z, ZZ, free_ring
from wittkit.errors import CongruenceFailed, CtxMismatch, LengthError, NotInGhostImage
from wittkit.rings import presented_ring
from wittkit.witt import (BigWittCtx, coplethysm, frob_polys, ghost_grid, neg_polys, prod_polys, sum_polys,
                          versch_one, witt_localized, wittring_presentation_Z)
from wittkit.witt.presentations import localization_density_check
from wittkit.witt.universal import build, cache_path, serialize, universal, write_cache
from wittkit.witt.vectors import integer_witt_components, univ_batch_int, univ_batch_mod

Zx = free_ring("x")


# -- universal polynomials ---------------------------------------------------

@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
@pytest.mark.parametrize("op", ["S", "P"])
def test_universal_polys_match_sympy(p, n, op):
    ref, X, Y = universal_sympy(p, n, op)
    ours = sum_polys(p, n) if op == "S" else prod_polys(p, n)
    names = [str(s) for s in X + Y]
    for f, g in zip(ours, ref):
        assert sp.expand(to_sympy(str(f), names) - g) == 0


def test_universal_examples():
    assert str(sum_polys(2, 1)[1]) == "-x0*y0+x1+y1"
    assert str(sum_polys(3, 1)[1]) == "-x0^2*y0-x0*y0^2+x1+y1"
    assert str(prod_polys(2, 1)[1]) == "x0^2*y1+x1*y0^2+2*x1*y1"


@pytest.mark.parametrize("p", [2, 3, 5])
def test_neg_and_frob_polys_by_ghost(p):
    n = 2
    rng = np.random.default_rng(p)
    for _ in range(20):
        a = [int(c) for c in rng.integers(-9, 10, n + 1)]
        neg = [f.evaluate(a, one=1) for f in neg_polys(p, n)]
        assert ghost_int(p, neg) == [-w for w in ghost_int(p, a)]
        fr = [f.evaluate(a, one=1) for f in frob_polys(p, n)]
        assert ghost_int(p, fr) == ghost_int(p, a)[1:]


def test_cache_is_deterministic(tmp_path, monkeypatch):
    monkeypatch.setenv("WITTKIT_CACHE", str(tmp_path))
    write_cache(build(3, 2))
    first = cache_path(3, 2).read_bytes()
    write_cache(build(3, 2))
    assert cache_path(3, 2).read_bytes() == first
    assert first.decode() == serialize(universal(3, 2))
    assert len(first.decode().splitlines()) == 4 * 3 - 1


# -- arithmetic examples -------------------------------------------------------

def test_examples_p2_n1():
    W = WittCtx(2, 1, Z)
    assert W.vec([1, 0]) + W.vec([1, 0]) == W.vec([2, -1])
    assert W.vec([0, 1]) * W.vec([0, 1]) == W.vec([0, 2])
    u = W.vec([5, -3])
    assert u + W.zero() == u and u * W.one() == u


def test_ghost_examples():
    W = WittCtx(2, 2, Z)
    assert [str(e) for e in W.ghost(W.vec([1, 1, 1])).entries] == ["1", "3", "7"]
    assert [str(e) for e in WittCtx(2, 1, Z).ghost(WittCtx(2, 1, Z).teich(3)).entries] == ["3", "9"]
    assert W.ghost(W.zero()).is_zero()


def test_from_ghost_examples():
    W = WittCtx(2, 1, Z)
    assert W.from_ghost(W.ghost_vec([1, 3])) == W.vec([1, 1])
    with pytest.raises(NotInGhostImage):
        W.from_ghost(W.ghost_vec([1, 2]))
    W3 = WittCtx(3, 2, Zx)
    a = Zx.elem("x+2")
    assert W3.from_ghost(W3.ghost(W3.teich(a))) == W3.teich(a)


def test_teich_versch_frob_examples():
    W = WittCtx(2, 1, Z)
    assert W.teich(Z.one()) == W.one()
    assert W.teich(2) * W.teich(3) == W.teich(6)
    V1 = W.versch(WittCtx(2, 0, Z).one())
    assert V1 == W.vec([0, 1]) and [str(e) for e in W.ghost(V1).entries] == ["0", "2"]
    assert V1 * V1 == W.from_int(2) * V1
    W2 = WittCtx(2, 1, Zx)
    a0, a1 = Zx.elem("x"), Zx.elem("x^2+1")
    assert W2.frob(W2.vec([a0, a1])).comps[0] == a0 ** 2 + a1 * 2


def test_truncate_examples():
    W = WittCtx(2, 1, Z)
    v = W.vec([2, -1])
    assert W.truncate(v, 1) == v
    assert W.truncate(v, 0) == WittCtx(2, 0, Z).vec([2])
    with pytest.raises(LengthError):
        W.truncate(v, 2)


def test_rgh_examples():
    W0 = WittCtx(2, 0, Zx)
    assert str(W0.rgh(W0.vec(["x"]))) == "x^2"
    W = WittCtx(2, 1, Z)
    r = W.rgh(W.vec([1, 1]))
    assert str(r) == "3" and str(r.ring) == "Z/4"
    W3 = WittCtx(3, 1, Zx)
    assert W3.rgh(W3.teich(Zx.elem("x"))) == W3.reduced_target().elem("x^9")


def test_alpha_examples():
    W = WittCtx(2, 1, Zx)
    w, a = W.alpha(W.vec(["x", "x+1"]))
    assert w == WittCtx(2, 0, Zx).vec(["x"]) and a == Zx.elem("x^2+2*x+2")
    v = W.teich(Zx.elem("x"))
    w, a = W.alpha(v)
    assert a == Zx.elem("x^2")
    w, a = W.alpha(W.vec([0, "x"]))
    assert w.is_zero() and a == Zx.elem("2*x")


def test_alpha_section_examples():
    W0 = WittCtx(2, 0, Z)
    assert W0.alpha_section(W0.vec([3]), 11) == WittCtx(2, 1, Z).vec([3, 1])
    with pytest.raises(CongruenceFailed):
        W0.alpha_section(W0.vec([3]), 10)
    W = WittCtx(3, 1, Zx)
    t = W.teich(Zx.elem("x"))
    assert W.alpha_section(t, Zx.elem("x^9")) == WittCtx(3, 2, Zx).teich(Zx.elem("x"))


def test_errors():
    with pytest.raises(CtxMismatch):
        WittCtx(2, 1, Z).one() + WittCtx(3, 1, Z).one()
    with pytest.raises(ValueError):
        WittCtx(4, 1, Z)


def test_integer_witt_components():
    for p in (2, 3):
        for c in range(-10, 11):
            comps = list(integer_witt_components(p, 3, c))
            assert ghost_int(p, comps) == [c] * 4
            assert from_ghost_int(p, [c] * 4) == comps


# -- property tests --------------------------------------------------------------

@st.composite
def witt_pair(draw, rings=("Z", "Z/8", "Z[x]")):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(0, 2))
    kind = draw(st.sampled_from(rings))
    R = {"Z": Z, "Z/8": FPRing(Scalar.mod(8), (), ()), "Z[x]": Zx}[kind]
    seed = draw(st.integers(0, 2 ** 32 - 1))
    W = WittCtx(p, n, R)
    rng = np.random.default_rng(seed)
    return W, W.random(rng, degree=3, bound=5, terms=3), W.random(rng, degree=3, bound=5, terms=3)


@given(witt_pair())
def test_ghost_is_a_ring_hom(data):
    W, u, v = data
    gu, gv = W.ghost(u), W.ghost(v)
    assert W.ghost(u + v) == gu + gv
    assert W.ghost(u * v) == gu * gv
    assert W.ghost(-u) == -gu
    assert W.ghost(W.one()) == W.ghost_vec([1] * (W.n + 1))


@given(witt_pair(rings=("Z",)))
def test_arithmetic_routes_agree(data):
    W, u, v = data
    for method in ("universal", "lift"):
        M = WittCtx(W.p, W.n, W.ring, method=method)
        a, b = M.vec(u.comps), M.vec(v.comps)
        assert [str(c) for c in (a + b).comps] == [str(c) for c in (u + v).comps]
        assert [str(c) for c in (a * b).comps] == [str(c) for c in (u * v).comps]
    rows = [[int(c.value.constant_value()) for c in u.comps + v.comps]]
    assert univ_batch_int(W.p, W.n, "S", rows)[0] == [int(c.value.constant_value()) for c in (u + v).comps]


@given(witt_pair(rings=("Z",)))
def test_kernel_route_matches_exact_mod_m(data):
    W, u, v = data
    m = 9
    Wm = WittCtx(W.p, W.n, FPRing(Scalar.mod(m), (), ()))
    a = Wm.vec([int(c.value.constant_value()) for c in u.comps])
    b = Wm.vec([int(c.value.constant_value()) for c in v.comps])
    exact = [int(c.value.constant_value()) % m for c in (u * v).comps]
    assert [int(c.value.constant_value()) % m for c in (a * b).comps] == exact
    vals = np.array([[int(c.value.constant_value()) % m for c in u.comps + v.comps]])
    assert univ_batch_mod(W.p, W.n, "P", m, vals)[0].tolist() == exact


@given(witt_pair(rings=("Z", "Z[x]")))
def test_ring_axioms(data):
    W, u, v = data
    w = W.from_int(3)
    assert (u + v) * w == u * w + v * w
    assert u * v == v * u
    assert u - u == W.zero()


@given(witt_pair(rings=("Z", "Z[x]")))
def test_ghost_injective_and_from_ghost_inverse(data):
    W, u, _ = data
    g = W.ghost(u)
    assert W.from_ghost(g) == u
    assert u.is_zero() or not g.is_zero()


@given(witt_pair(rings=("Z", "Z[x]")))
def test_frobenius_and_verschiebung(data):
    W, u, v = data
    if W.n == 0:
        return
    short = W.with_length(W.n - 1)
    us, vs = W.truncate(u, W.n - 1), W.truncate(v, W.n - 1)
    Vu, Vv = W.versch(us), W.versch(vs)
    assert W.frob(Vu) == short.from_int(W.p) * us
    assert Vu * Vv == W.from_int(W.p) * W.versch(us * vs)
    assert W.versch(us + vs) == Vu + Vv
    gV = W.ghost(Vu).entries
    gu = short.ghost(us).entries
    assert gV[0].is_zero() and all(gV[i] == gu[i - 1] * W.p for i in range(1, W.n + 1))
    assert short.ghost(W.frob(u)).entries == W.ghost(u).entries[1:]


@given(st.sampled_from([2, 3]), st.integers(1, 2), st.integers(0, 3), st.integers(1, 3), st.integers(0, 3))
def test_teich_versch_monomial_identity(p, n, b, a, k):
    # [t]^b · V^k([t^a]) = V^k([t^(b p^k + a)]) in W_n(Z[t])
    k = min(k, n)
    Zt = free_ring("t")
    W = WittCtx(p, n, Zt)
    inner = WittCtx(p, n - k, Zt)
    lhs = W.teich(Zt.elem("t")) ** b * W.versch_power(k, inner.teich(Zt.elem(f"t^{a}")))
    rhs = W.versch_power(k, inner.teich(Zt.elem(f"t^{b * p ** k + a}")))
    assert lhs == rhs


@given(witt_pair(rings=("Z", "Z[x]")))
def test_teich_multiplicative_and_frob(data):
    W, u, v = data
    a, b = u.comps[0], v.comps[0]
    assert W.teich(a) * W.teich(b) == W.teich(a * b)
    if W.n:
        assert W.frob(W.teich(a)) == W.with_length(W.n - 1).teich(a ** W.p)


@given(witt_pair(rings=("Z", "Z[x]")))
def test_rgh_is_a_ring_hom(data):
    W, u, v = data
    assert W.rgh(u + v) == W.rgh(u) + W.rgh(v)
    assert W.rgh(u * v) == W.rgh(u) * W.rgh(v)
    # rgh is gh_{n+1} of any extension, mod p^(n+1)
    up = W.with_length(W.n + 1)
    ext = up.vec(list(u.comps) + [u.comps[0] * 7 + 1])
    assert W.reduced_target().elem(up.ghost(ext).entries[-1].value) == W.rgh(u)


@given(witt_pair(rings=("Z", "Z[x]")), st.integers(1, 7))
def test_alpha_equalizer(data, shift):
    W, u, v = data
    up = W.with_length(W.n + 1)
    x = up.vec(list(u.comps) + [v.comps[0]])
    w, a = up.alpha(x)
    assert W.alpha_section(w, a) == x
    if shift % W.p ** (W.n + 1):
        with pytest.raises(CongruenceFailed):
            W.alpha_section(w, a + shift)


# -- co-plethysm and big Witt vectors ------------------------------------------------

def test_coplethysm_examples():
    W = WittCtx(2, 2, Z)
    c = coplethysm(W.vec([0, 1, 0]), 1)
    grid = ghost_grid(c)
    gh = W.ghost(W.vec([0, 1, 0])).entries
    assert [[str(e) for e in row] for row in grid] == [[str(gh[0]), str(gh[1])], [str(gh[1]), str(gh[2])]]
    Wx = WittCtx(3, 2, Zx)
    t = Wx.teich(Zx.elem("x"))
    inner = WittCtx(3, 1, Zx)
    assert coplethysm(t, 1) == WittCtx(3, 1, inner).teich(inner.teich(Zx.elem("x")))
    assert coplethysm(W.one(), 1) == WittCtx(2, 1, WittCtx(2, 1, Z)).one()


@given(st.integers(0, 2 ** 32 - 1))
def test_big_witt_orders_agree(seed):
    B = BigWittCtx({2: 1, 3: 1}, Z, order=[2, 3])
    B2 = B.with_order([3, 2])
    v = B.random(np.random.default_rng(seed), degree=0, bound=6, terms=1)
    w = B.reorder(v, [3, 2])
    assert {d: str(e) for d, e in B.flatten_ghost(v).items()} == {d: str(e) for d, e in B2.flatten_ghost(w).items()}
    assert B.from_flat_ghost(B.flatten_ghost(v)) == v


def test_big_witt_teich_and_single_prime():
    B = BigWittCtx({2: 1, 3: 1}, Zx)
    flat = B.flatten_ghost(B.teich(Zx.elem("x")))
    assert sorted(flat) == [1, 2, 3, 6]
    assert all(flat[d] == Zx.elem(f"x^{d}") for d in flat)
    one = BigWittCtx({3: 2}, Z)
    W = WittCtx(3, 2, Z)
    v = W.vec([1, 2, -1])
    assert [one.flatten_ghost(v)[d] for d in (1, 3, 9)] == list(W.ghost(v).entries)
    with pytest.raises(Exception):
        BigWittCtx({2: 1, 3: 1}, Z, order=[2, 5])


# -- presentations ---------------------------------------------------------------

@pytest.mark.parametrize("p,n", [(2, 1), (3, 2), (2, 3), (5, 0)])
def test_wittring_presentation_Z(p, n):
    R, rep = wittring_presentation_Z(p, n)
    assert rep.ok
    assert len(R.vars) == n
    W = WittCtx(p, n, Z)
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            assert versch_one(W, i) * versch_one(W, j) == W.from_int(p ** i) * versch_one(W, j)


def test_witt_localized_examples():
    L = witt_localized(Z, 1, 2, 1)
    assert L.report["ok"]
    Zt = free_ring("t")
    L = witt_localized(Zt, "t", 2, 1)
    g = L.ctx.ghost(L.inverse).entries
    u0 = L.ring.gen(L.ring.vars[1])
    assert g[0] == u0 and g[1] == u0 * u0
    assert L.ctx.teich(L.ring.elem("t")) * L.inverse == L.ctx.one()


def test_localization_density():
    L = witt_localized(free_ring("t"), "t", 2, 1)
    rep = localization_density_check(L, degree_bound=3, samples=20)
    assert rep["ok"]


def test_witt_over_quotient_ring():
    A = presented_ring(ZZ, ["x"], ["x^2-2*x"])
    W = WittCtx(2, 1, A)
    u = W.vec(["x", "1"])
    assert W.ghost(u * u) == W.ghost(u) * W.ghost(u)
