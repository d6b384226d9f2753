from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from matgroup_interp.errors import BadRingSpec, InfiniteRing, NonUnit
from matgroup_interp.ring import (
    RingSpec,
    nth_power_classes,
    primitive_root,
    roots_of_unity,
    units,
)

MODULI = st.sampled_from([2, 3, 4, 5, 6, 7, 9, 12, 13])


@pytest.mark.parametrize("text", ["gf:5", "zmod:6", "q"])
def test_parse_round_trip(text):
    assert str(RingSpec.parse(text)) == text


@pytest.mark.parametrize("text", ["gf:6", "gf:x", "zz:4", "", "zmod:0"])
def test_parse_rejects(text):
    with pytest.raises(BadRingSpec):
        RingSpec.parse(text)


def test_rationals_are_infinite():
    q = RingSpec.parse("q")
    assert not q.is_finite and q.is_field
    with pytest.raises(InfiniteRing):
        q.elements()


def test_rational_elements():
    q = RingSpec.parse("q")
    assert q.elem("-1/2") == Fraction(-1, 2)
    assert q.inv(q.elem("2/3")) == Fraction(3, 2)


def test_nonunit_in_zmod():
    with pytest.raises(NonUnit):
        RingSpec.zmod(6).inv(2)


@given(MODULI, st.integers(), st.integers(), st.integers())
def test_ring_axioms_match_integers(m, a, b, c):
    R = RingSpec.zmod(m) if m in (4, 6, 9, 12) else RingSpec.gf(m)
    a, b, c = R.elem(a), R.elem(b), R.elem(c)
    assert R.add(a, b) == (a + b) % m
    assert R.mul(a, b) == (a * b) % m
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, R.neg(a)) == R.zero


@given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(min_value=1))
def test_field_inverse(p, a):
    F = RingSpec.gf(p)
    a = F.elem(a)
    if a == 0:
        with pytest.raises(NonUnit):
            F.inv(a)
    else:
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_primitive_root_generates(p):
    F = RingSpec.gf(p)
    g = primitive_root(F)
    assert {pow(g, k, p) for k in range(p - 1)} == set(range(1, p))


@pytest.mark.parametrize("p,n,expected", [(3, 3, 1), (5, 3, 1), (7, 3, 3), (13, 3, 3), (13, 4, 4), (5, 2, 2)])
def test_power_classes_and_roots(p, n, expected):
    F = RingSpec.gf(p)
    _, index = nth_power_classes(F, n)
    assert index == expected
    assert len(roots_of_unity(F, n)) == expected


def test_units_of_zmod():
    assert units(RingSpec.zmod(12)) == [1, 5, 7, 11]
