"""δ-calculus, jet presentations, co-ghost maps and the Greenberg transform."""
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from oracles import delta_sympy, to_sympy
from wittkit import FPRing, Scalar, Z, ZZ, count_points, free_ring, mod_fiber
from wittkit.errors import BadBase, LevelExceeded
from wittkit.jets import (JetCtx, check_delta_identities, coghost, coghost_cokernel_index, coghost_total,
                          corpus_relation, delta_apply, delta_stability_certificate, greenberg,
                          jet_mod_p_etale_check, jet_presentation, phi_apply, ramified_relation, rcgh, rcgh_consistency,
                          rcgh_lift, unit_witt_coordinates)
from wittkit.poly import Poly, parse_poly
from wittkit.rings import presented_ring, same_ideal

Zx = free_ring("x")
Zxy = free_ring("x y")


def poly_in(ctx, max_deg=3, coeff=6):
    """Hypothesis strategy: polynomials in the level-0 variables of ctx."""
    nv = len(ctx.A.vars)
    mono = st.tuples(*[st.integers(0, max_deg) for _ in range(nv)])
    terms = st.dictionaries(mono, st.integers(-coeff, coeff), max_size=4)

    def build(t):
        f = Poly.const(0, ctx.vars)
        for e, c in t.items():
            m = Poly.const(c, ctx.vars)
            for x, k in zip(ctx.A.vars, e):
                m = m * ctx.var(x) ** k
            f = f + m
        return f
    return terms.map(build)


# -- φ and δ ---------------------------------------------------------------------

def test_phi_examples():
    c = JetCtx(2, 2, Zx)
    assert phi_apply(c, "x") == parse_poly("x^2 + 2*d1_x", c.vars)
    assert phi_apply(c, "x", 2) == parse_poly("(x^2+2*d1_x)^2 + 2*(d1_x^2 + 2*d2_x)", c.vars)
    assert phi_apply(c, "5") == Poly.const(5, c.vars)
    with pytest.raises(LevelExceeded):
        phi_apply(c, "d2_x")
    with pytest.raises(LevelExceeded):
        phi_apply(c, "x", 3)


def test_delta_examples():
    c = JetCtx(2, 1, Zx)
    assert delta_apply(c, 1).is_zero
    assert delta_apply(c, 2) == Poly.const(-1, c.vars)
    assert delta_apply(c, "x^2") == parse_poly("2*x^2*d1_x + 2*d1_x^2", c.vars)
    with pytest.raises(LevelExceeded):
        delta_apply(c, "d1_x")


@pytest.mark.parametrize("p", [2, 3, 5])
def test_delta_matches_sympy(p):
    c = JetCtx(p, 2, Zxy)
    syms = {v: sp.Symbol(v) for v in c.vars}
    chains = [[syms[x], syms[f"d1_{x}"], syms[f"d2_{x}"]] for x in ("x", "y")]
    for text in ("x^2*y - 3*x + 7", "x*y^2 + y^3 - 2", "(x + y)^2 - x*y"):
        expr = to_sympy(text, c.vars)
        ours = delta_apply(c, text)
        assert sp.expand(to_sympy(str(ours), c.vars) - delta_sympy(expr, p, chains)) == 0


@pytest.mark.parametrize("p", [2, 3])
@given(data=st.data())
def test_delta_identities(p, data):
    c = JetCtx(p, 1, Zxy)
    a = data.draw(poly_in(c))
    b = data.draw(poly_in(c))
    assert check_delta_identities(c, a, b) == {"sum": True, "product": True, "phi": True}


@pytest.mark.parametrize("p", [2, 3])
@given(data=st.data())
def test_delta_stability(p, data):
    c = JetCtx(p, 1, Zx)
    g = data.draw(poly_in(c))
    for r in (f"x^2-{p}*x", f"x^2-{p}", "x^3-x"):
        assert delta_stability_certificate(c, g, r)["ok"]


# -- presentations ------------------------------------------------------------------

def test_free_presentation():
    J = jet_presentation(JetCtx(2, 1, Zx))
    assert J.vars == ("x", "d1_x") and list(J.ring.relations) == []
    assert set(J.frobenius) == {"x"}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_relation_of_x2_minus_px(p):
    A = presented_ring(ZZ, ["x"], [f"x^2-{p}*x"])
    J = jet_presentation(JetCtx(p, 1, A))
    lvl1 = J.relations_by_level[1][0]
    base = FPRing(ZZ, J.vars, [J.relations_by_level[0][0]])   # modulo x^2 - px only
    assert base.normal_form(lvl1 - corpus_relation(p).with_vars(J.vars)).is_zero
    assert same_ideal(mod_fiber(J.ring, p), ["x^2"])


def test_jet_presentation_of_Z_mod_4():
    J = jet_presentation(JetCtx(2, 1, FPRing(Scalar.mod(4), (), ())))
    assert sorted(int(r.constant_value()) for r in J.ring.relations) == [-6, 4]
    assert count_points(J.ring, 2) == 1


@pytest.mark.parametrize("p", [2, 3])
def test_ramified_relation(p):
    A = presented_ring(ZZ, ["x"], [f"x^2-{p}"])
    J = jet_presentation(JetCtx(p, 1, A))
    lvl1 = J.relations_by_level[1][0]
    base = FPRing(ZZ, J.vars, [J.relations_by_level[0][0]])
    assert base.normal_form(lvl1 - ramified_relation(p).with_vars(J.vars)).is_zero
    assert count_points(J.ring, p) == 0


# -- co-ghost ------------------------------------------------------------------------

def test_coghost_examples():
    c = JetCtx(2, 1, Zx)
    assert coghost(c, 0).images[0].value == c.var("x")
    assert str(coghost(c, 1).images[0]) == "x^2+2*d1_x"
    with pytest.raises(LevelExceeded):
        coghost(c, 2)
    T = coghost_total(c)
    assert T.domain.vars == ("x_0", "x_1")


def _weighted_index_oracle(p, bound):
    # monomials x^a (δx)^b of weight a + p b <= bound; the co-ghost map is
    # unitriangular up to the factor p^b on each
    return p ** sum(b for b in range(bound // p + 1) for a in range(bound - p * b + 1))


@pytest.mark.parametrize("p,bound", [(2, 3), (2, 4), (3, 5)])
def test_coghost_cokernel_index(p, bound):
    r = coghost_cokernel_index(JetCtx(p, 1, Zx), bound)
    assert r["square"] and r["injective"]
    assert r["index"] == _weighted_index_oracle(p, bound)
    if (p, bound) == (2, 3):
        assert r["index"] == p ** 2


@pytest.mark.parametrize("p", [2, 3])
def test_coghost_well_defined_on_quotients(p):
    A = presented_ring(ZZ, ["x"], [f"x^2-{p}*x"])
    c = JetCtx(p, 1, A)
    coghost(c, 1)
    coghost_total(c)


# -- reduced co-ghost ------------------------------------------------------------------

def test_rcgh_examples():
    for p in (2, 3):
        r0 = rcgh(JetCtx(p, 0, Zx))
        assert str(r0.images[0]) == f"x^{p}"
        assert str(r0.codomain.base) == f"Z/{p}"
    r1 = rcgh(JetCtx(2, 1, Zx))
    assert str(r1.images[0]) == "x^4+2*d1_x^2"
    c = JetCtx(3, 1, Zx)
    assert rcgh_lift(c, Poly.const(1, c.vars)) == Poly.const(1, c.vars)
    assert unit_witt_coordinates(c, "x")[1] == c.var("d1_x")


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_rcgh_consistency(p, n):
    c = JetCtx(p, n, Zxy)
    for f in ("x", "y", "x*y + 1"):
        assert rcgh_consistency(c, f)["ok"]


# -- points away from p ------------------------------------------------------------

CORPUS_SMALL = [
    ("Z[x]/(x^2-x)", ["x"], ["x^2-x"]),
    ("Z[x]/(x^2-2x)", ["x"], ["x^2-2*x"]),
    ("Z[x]/(x^2-3)", ["x"], ["x^2-3"]),
    ("Z[x,y]/(xy-1)", ["x", "y"], ["x*y-1"]),
]


@pytest.mark.parametrize("name,vars,rels", CORPUS_SMALL)
@pytest.mark.parametrize("p", [2, 3])
def test_points_away_from_p(name, vars, rels, p):
    A = presented_ring(ZZ, vars, rels)
    J = jet_presentation(JetCtx(p, 1, A)).ring
    for q in (2, 3, 4, 5, 7):
        if q % p == 0:
            continue
        assert count_points(J, q) == count_points(A, q) ** 2, (name, q)


# -- mod-p étale base change --------------------------------------------------------

@pytest.mark.parametrize("A,f,p,n", [
    (free_ring("t"), "t", 2, 1),
    (free_ring("t"), "t+1", 2, 2),
    (free_ring("s t"), "s*t", 3, 1),
    (free_ring("t"), "1", 2, 1),
    (Z, "1", 3, 1),
    (presented_ring(ZZ, ["x"], ["x^2-2*x"]), "x+1", 2, 1),
])
def test_jet_mod_p_etale(A, f, p, n):
    rep = jet_mod_p_etale_check(A, f, p, n)
    assert rep["ok"]


def test_etale_images_for_t():
    rep = jet_mod_p_etale_check(free_ring("t"), "t", 2, 1)
    # δ(ut - 1) = 0 mod 2 gives δu = u^4 δt (up to the relation ut = 1)
    assert rep["images"]["d1_u"] == "d1_t*u^4"


# -- Greenberg transform -------------------------------------------------------------------

def test_greenberg_examples():
    A1 = presented_ring(Scalar.mod(3), ["x"], ["x^2-1"])
    G1 = greenberg(A1)
    assert G1.vars == ("x",) and str(G1.base) == "Z/3"
    assert count_points(G1, 3) == count_points(A1, 3) == 2
    G = greenberg(FPRing(Scalar.mod(4), (), ()))
    assert count_points(G, 2) == 1
    A = presented_ring(Scalar.mod(4), ["x"], ["x^2"])
    G2 = greenberg(A)
    assert G2.vars == ("x", "d1_x") and same_ideal(G2, ["x^2"])
    with pytest.raises(BadBase):
        greenberg(Zx)
    with pytest.raises(BadBase):
        greenberg(FPRing(Scalar.mod(6), (), ()))


@pytest.mark.parametrize("rel,shift", [("x^2-2", "x"), ("x^2+x+1", "x^3+1"), ("x^3-x", "3")])
def test_greenberg_independent_of_lift(rel, shift):
    A = presented_ring(Scalar.mod(4), ["x"], [rel])
    G1, G2 = greenberg(A), greenberg(A, lift_shift=[shift])
    for q in (2, 4, 8):
        assert count_points(G1, q) == count_points(G2, q)
    if G1.confluent and G2.confluent:
        assert same_ideal(G1, G2.relations)


def test_greenberg_points_are_witt_points():
    # Gr_2(A)(F_2) = A(W_1(F_2)) = A(Z/4)
    for rel in ("x^2-2", "x^2-1", "x^2+x+1", "x^2-x"):
        A = presented_ring(Scalar.mod(4), ["x"], [rel])
        sols = sum(1 for a in range(4) if parse_poly(rel).evaluate([a], one=1) % 4 == 0)
        assert count_points(greenberg(A), 2) == sols
