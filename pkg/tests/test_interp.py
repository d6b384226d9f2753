import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from matgroup_interp.errors import BadIndices, NotInCarrier
from matgroup_interp.interp import (
    InterpretedRing,
    carrier_product,
    connecting_iso,
    interp_add,
    interp_mul,
    lambda_check,
    lambda_map,
    mu_check,
    mu_map,
    ring_iso_check,
    tn_variant_mul,
    tn_witness_products,
)
from matgroup_interp.matgroup import (
    Matrix,
    commutator,
    enumerate_group,
    mat_mul,
    random_element,
    transvection,
)
from matgroup_interp.ring import RingSpec
from matgroup_interp.wordcalc import elimination_schedule


def t13(spec, a, n=3):
    return transvection(spec, n, 1, n, a)


def test_add_examples():
    F5 = RingSpec.gf(5)
    r = InterpretedRing(F5, 3, "SL", (1, 3))
    assert interp_add(r, t13(F5, 2), t13(F5, 3)) == t13(F5, 0)
    Q = RingSpec.parse("q")
    rq = InterpretedRing(Q, 3, "SL", (1, 3))
    assert interp_add(rq, t13(Q, Fraction(1, 2)), t13(Q, Fraction(1, 3))) == t13(Q, Fraction(5, 6))


def test_mul_examples():
    F7, Z6 = RingSpec.gf(7), RingSpec.zmod(6)
    r7 = InterpretedRing(F7, 3, "SL", (1, 3))
    assert interp_mul(r7, t13(F7, 2), t13(F7, 3)) == t13(F7, 6)
    # the value is the commutator [t12(2), t23(3)] computed directly
    assert commutator(transvection(F7, 3, 1, 2, 2), transvection(F7, 3, 2, 3, 3)) == t13(F7, 6)
    r6 = InterpretedRing(Z6, 3, "SL", (1, 3))
    assert interp_mul(r6, t13(Z6, 2), t13(Z6, 3)) == t13(Z6, 0)
    x = t13(F7, 4)
    assert interp_mul(r7, x, t13(F7, 1)) == x


def test_not_in_carrier():
    F5 = RingSpec.gf(5)
    r = InterpretedRing(F5, 3, "SL", (1, 3))
    with pytest.raises(NotInCarrier):
        interp_add(r, transvection(F5, 3, 1, 2, 1), t13(F5, 1))


def test_small_n_rejected():
    with pytest.raises(BadIndices):
        InterpretedRing(RingSpec.gf(5), 2, "SL", (1, 2))


@given(st.sampled_from([3, 5, 7, 13]), st.integers(0, 12), st.integers(0, 12), st.sampled_from([3, 4]))
def test_operations_match_field(p, a, b, n):
    F = RingSpec.gf(p)
    r = InterpretedRing(F, n, "SL", (1, n))
    x, y = r.encode(F.elem(a)), r.encode(F.elem(b))
    assert r.decode(interp_add(r, x, y)) == (a + b) % p
    assert r.decode(interp_mul(r, x, y)) == (a * b) % p


@pytest.mark.parametrize("ring", ["gf:2", "gf:3", "gf:7", "zmod:6"])
@pytest.mark.parametrize("carrier", [(1, 3), (2, 1), (3, 1), (3, 2)])
def test_ring_iso_check(ring, carrier):
    r = InterpretedRing(RingSpec.parse(ring), 3, "SL", carrier)
    rep = ring_iso_check(r)
    assert rep.passed, rep.failures


def test_ring_iso_gf2_n4():
    assert ring_iso_check(InterpretedRing(RingSpec.gf(2), 4, "SL", (1, 4))).passed


def test_triangular_host():
    F = RingSpec.gf(5)
    r = InterpretedRing(F, 3, "T", (1, 3))
    assert ring_iso_check(r).passed
    x, y = r.encode(2), r.encode(3)
    assert tn_variant_mul(r, x, y) == r.encode(1)
    assert all(p == r.encode(1) for p in tn_witness_products(r, x, y, limit=32))
    assert tn_variant_mul(r, r.encode(0), y) == r.encode(0)
    with pytest.raises(BadIndices):
        InterpretedRing(F, 3, "T", (3, 1))


def test_connecting_iso_examples():
    F = RingSpec.gf(7)
    r = InterpretedRing(F, 3, "SL", (1, 3))
    for a in range(7):
        assert connecting_iso(r, (1, 2), (1, 3), transvection(F, 3, 1, 2, a)) == transvection(F, 3, 1, 3, a)
        assert connecting_iso(r, (1, 3), (2, 3), transvection(F, 3, 1, 3, a)) == transvection(F, 3, 2, 3, a)
        x = transvection(F, 3, 2, 1, a)
        assert connecting_iso(r, (2, 1), (2, 1), x) == x


@pytest.mark.parametrize("n", [3, 4])
def test_connecting_iso_all_pairs(n):
    F = RingSpec.gf(5)
    r = InterpretedRing(F, n, "SL", (1, n))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for src in pairs:
        for dst in pairs:
            for a in (0, 1, 3):
                assert connecting_iso(r, src, dst, transvection(F, n, *src, a)) == transvection(F, n, *dst, a)


def test_lambda_small_examples():
    F = RingSpec.gf(5)
    s = elimination_schedule(3)
    lam_id = lambda_map(Matrix.identity(F, 3), s)
    assert lam_id.decode().is_identity()
    lam = lambda_map(transvection(F, 3, 1, 2, 3), s)
    r = lam.ring
    assert lam[1, 2] == r.encode(3)
    assert lam.decode() == transvection(F, 3, 1, 2, 3)


@given(st.integers(0, 2**32))
def test_lambda_homomorphism_sampled(seed):
    F = RingSpec.gf(5)
    rng = random.Random(seed)
    g, h = random_element(F, 3, "SL", rng), random_element(F, 3, "SL", rng)
    assert lambda_map(mat_mul(g, h)).entries == carrier_product(lambda_map(g), lambda_map(h)).entries


def test_lambda_exhaustive_gf2():
    rep = lambda_check(RingSpec.gf(2), 3)
    assert rep.passed, rep.failures
    assert rep.records[0].observed["pairs"] == 168 * 168


def test_lambda_over_rationals():
    rep = lambda_check(RingSpec.parse("q"), 3, pairs=5, seed=3)
    assert rep.passed, rep.failures


@pytest.mark.parametrize("p", [3, 7])
def test_mu(p):
    F = RingSpec.gf(p)
    assert mu_map(F, 3, 0).is_identity()
    assert mu_check(F, 3).passed


def test_lambda_image_elements_in_sl():
    F = RingSpec.gf(3)
    els = sorted(enumerate_group(F, 3, "SL").elements)[:50]
    rep = lambda_check(F, 3, elements=els)
    assert rep.passed
