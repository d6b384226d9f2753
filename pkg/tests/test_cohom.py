import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from matgroup_interp.cohom import (
    Cocycle,
    FinAbGroup,
    bn_factorize,
    carry_cocycle,
    coboundary_from,
    cocycle_check,
    cohomologous,
    cot_check,
    ext_group,
    extension_group,
    extension_iso_check,
    is_coboundary,
    is_coboundary_bruteforce,
    is_valid,
)
from matgroup_interp.errors import InvalidCocycle, NotCoboundary

Z2 = FinAbGroup((2,))


def random_psi(B, A, rng):
    psi = {x: tuple(rng.randrange(m) for m in A.orders) for x in B.elements()}
    psi[B.zero] = A.zero
    return psi


def test_trivial_cocycle():
    f = Cocycle.trivial(Z2, Z2)
    assert is_valid(f) and cocycle_check(f).passed
    assert all(v == (0,) for v in is_coboundary(f).values())


def test_z4_cocycle():
    f = carry_cocycle(2, Z2)
    assert f((1,), (1,)) == (1,)
    assert is_valid(f)
    with pytest.raises(NotCoboundary):
        is_coboundary(f)
    assert is_coboundary_bruteforce(f) is None
    E = extension_group(f)
    assert E.order_multiset() == {1: 1, 2: 1, 4: 2}
    assert extension_group(Cocycle.trivial(Z2, Z2)).order_multiset() == {1: 1, 2: 3}


def test_random_table_is_rejected(rng):
    B, A = FinAbGroup((3,)), FinAbGroup((3,))
    table = {(x, y): (rng.randrange(3),) for x in B.elements() for y in B.elements()}
    table[((0,), (1,))] = (1,)
    f = Cocycle(B, A, table)
    assert not is_valid(f)
    with pytest.raises(InvalidCocycle):
        is_coboundary(f)


def test_psi_on_z2_gives_trivial_cocycle():
    f = coboundary_from(Z2, Z2, {(0,): (0,), (1,): (1,)})
    assert f.is_trivial()


@given(st.integers(0, 2**32))
def test_coboundaries_are_cocycles_on_z3(seed):
    B = FinAbGroup((3,))
    f = coboundary_from(B, B, random_psi(B, B, random.Random(seed)))
    assert is_valid(f)


@given(st.integers(0, 2**32))
def test_coboundary_round_trip(seed):
    B, A = FinAbGroup((2, 4)), FinAbGroup((4,))
    f = coboundary_from(B, A, random_psi(B, A, random.Random(seed)))
    assert coboundary_from(B, A, is_coboundary(f)) == f


@given(st.integers(0, 2**32))
def test_cohomologous_shift(seed):
    rng = random.Random(seed)
    B = FinAbGroup((4,))
    f = carry_cocycle(4, B)
    g = f.add(coboundary_from(B, B, random_psi(B, B, rng)))
    same, psi = cohomologous(f, g)
    assert same
    assert extension_iso_check(f, g, psi)


@pytest.mark.parametrize("m", range(1, 5))
@pytest.mark.parametrize("n", range(1, 5))
def test_ext_orders(m, n):
    assert ext_group(FinAbGroup((m,)), FinAbGroup((n,))).order == gcd(m, n)


def test_ext_noncyclic():
    # Ext(Z/2 x Z/2, Z/2) = (Z/2)^2
    assert ext_group(FinAbGroup((2, 2)), Z2).order == 4


def test_cot_examples():
    B = FinAbGroup((2, 2))
    assert cot_check(Cocycle.trivial(B, Z2), [(1, 0)], [(0, 1)]).is_cot
    f = carry_cocycle(2, Z2, factor=0, domain=B)
    assert not cot_check(f, [(1, 0)], [(0, 1)]).is_cot
    assert cot_check(f, [(0, 1)], [(1, 0)]).is_cot
    assert not cot_check(carry_cocycle(2, Z2), [(1,)], []).is_cot


def test_bn_factorization():
    B = FinAbGroup((2, 2))
    triv = bn_factorize(Cocycle.trivial(B, Z2))
    assert all(fi.is_trivial() for fi in triv.factors)
    f = carry_cocycle(2, Z2, factor=0, domain=B)
    res = bn_factorize(f, seed=5)
    assert res.product_cohomologous and res.fn_cohomologous_to_inverse
    assert not res.factors[0].is_trivial()
    assert is_coboundary(res.factors[1]) is not None


def test_mismatched_domains():
    with pytest.raises(Exception):
        Cocycle.trivial(Z2, Z2).add(Cocycle.trivial(FinAbGroup((3,)), Z2))
