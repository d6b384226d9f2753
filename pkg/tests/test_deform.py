import pytest

from matgroup_interp.cohom import Cocycle, FinAbGroup, carry_cocycle, coboundary_from
from matgroup_interp.deform import (
    DeformedTnElem,
    DeformedTorusElem,
    GlDeformContext,
    TnDeformation,
    UnitLog,
    collapse_report,
    deformation_distinguisher,
    gl_deform_report,
    group_axiom_report,
    tn_center,
    tn_product,
    torus_product,
    trivial_collapse_iso,
)
from matgroup_interp.errors import InconsistentContext, InvalidCocycle, NotTrivialCocycle
from matgroup_interp.matgroup import Matrix, enumerate_group, mat_mul, transvection
from matgroup_interp.ring import RingSpec

F3 = RingSpec.gf(3)
Z2 = FinAbGroup((2,))


@pytest.fixture(scope="module")
def pair():
    B = UnitLog(F3).group(2)
    trivial = TnDeformation.trivial(F3, 3, Z2)
    twisted = TnDeformation(F3, 3, Z2, carry_cocycle(2, Z2, factor=0, domain=B))
    return trivial, twisted


def test_unit_log():
    lg = UnitLog(RingSpec.gf(7))
    assert lg.g == 3 and lg.m == 6
    assert all(lg.exp[lg.log[u]] == u for u in range(1, 7))


def test_order_and_axioms(pair):
    for d in pair:
        assert d.order == 216
        rep = group_axiom_report(d)
        assert rep.passed, rep.failures


def test_center_is_z(pair):
    for d in pair:
        assert len(tn_center(d)) == 2


def test_action_convention():
    d = TnDeformation.trivial(F3, 3, Z2)
    u = transvection(F3, 3, 1, 2, 1)
    b = (2, 1)
    # D_b^-1 t12(1) D_b = t12(b1^-1 * 1 * b2)
    assert d.act(b, u) == transvection(F3, 3, 1, 2, 2)


def test_torus_order_four(pair):
    _, twisted = pair
    x = DeformedTorusElem((0,), (2, 1))
    sq = torus_product(twisted, x, x)
    assert sq == DeformedTorusElem((1,), (1, 1))
    assert twisted.group().order_multiset().get(4, 0) > 0
    assert pair[0].group().order_multiset().get(4, 0) == 0


def test_trivial_z_is_k():
    d = TnDeformation.trivial(F3, 3, FinAbGroup((1,)))
    K = enumerate_group(F3, 3, "K").elements
    els = d.elements()
    image = {mat_mul(x.u, d.D(x.t.b)[1]) for x in els}
    assert image == K
    assert len(tn_center(d)) == 1


def test_collapse():
    d = TnDeformation.trivial(F3, 3, FinAbGroup((2,)))
    rep = collapse_report(d)
    assert rep.passed, rep.failures
    B = UnitLog(F3).group(2)
    with pytest.raises(NotTrivialCocycle):
        trivial_collapse_iso(TnDeformation(F3, 3, Z2, carry_cocycle(2, Z2, domain=B)))


def test_distinguisher(pair):
    trivial, twisted = pair
    assert deformation_distinguisher(trivial, twisted)["verdict"].startswith("group-nonisomorphic")
    assert deformation_distinguisher(trivial, trivial)["verdict"] == "extension-equivalent"
    B = trivial.B
    psi = {x: (x[0] % 2,) for x in B.elements()}
    shifted = TnDeformation(F3, 3, Z2, coboundary_from(B, Z2, psi))
    out = deformation_distinguisher(trivial, shifted)
    assert out["verdict"] == "extension-equivalent" and out["witness"] is not None


def test_invalid_cocycles():
    B = UnitLog(F3).group(2)
    with pytest.raises(InvalidCocycle):
        TnDeformation(F3, 3, Z2, Cocycle.trivial(FinAbGroup((2,)), Z2))
    table = {(x, y): Z2.zero for x in B.elements() for y in B.elements()}
    table[((1, 0), (0, 1))] = (1,)
    with pytest.raises(InvalidCocycle):
        TnDeformation(F3, 3, Z2, Cocycle(B, Z2, table))


def test_gl_foundation_bijection():
    r = 2
    ctx = GlDeformContext(F3, 2, FinAbGroup((1,)), Cocycle.trivial(FinAbGroup((r,)), FinAbGroup((1,))))
    rep = gl_deform_report(ctx)
    assert rep.passed, rep.failures
    assert ctx.order == 48


def test_gl_twisted_small():
    B = FinAbGroup((2,))
    ctx = GlDeformContext(F3, 2, B, carry_cocycle(2, B))
    rep = gl_deform_report(ctx)
    assert rep.passed and ctx.order == 96


def test_gl_synthetic_gf7():
    F7 = RingSpec.gf(7)
    B = FinAbGroup((3,))
    ctx = GlDeformContext(F7, 3, B, carry_cocycle(3, B))
    assert ctx.r == 3
    rep = gl_deform_report(ctx, samples=200, seed=1)
    assert rep.passed, rep.failures
    assert ctx.order == ctx.h1_order * 3 * 3


def test_gl_bad_context():
    with pytest.raises(InconsistentContext):
        GlDeformContext(F3, 2, Z2, Cocycle.trivial(FinAbGroup((3,)), Z2))
    with pytest.raises(InconsistentContext):
        GlDeformContext(F3, 2, FinAbGroup((1,)), Cocycle.trivial(FinAbGroup((2,)), FinAbGroup((1,))),
                        p={(0, 0): Matrix.identity(F3, 2)})


def test_identity_element(pair):
    _, d = pair
    e = d.identity()
    x = DeformedTnElem(transvection(F3, 3, 1, 3, 2), DeformedTorusElem((1,), (2, 2)))
    assert tn_product(d, e, x) == x == tn_product(d, x, e)
