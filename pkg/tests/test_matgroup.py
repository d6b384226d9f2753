import itertools
import random
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from matgroup_interp.errors import BadIndex, NotInvertible, TooLarge
from matgroup_interp.matgroup import (
    Matrix,
    analytic_center,
    center_of,
    commutator,
    conjugate,
    det,
    diag_elem,
    enumerate_group,
    gl_order,
    isogeny_kernel,
    mat_inv,
    mat_mul,
    membership,
    predicted_order,
    quotient_by_center,
    random_element,
    steinberg_suite,
    transvection,
)
from matgroup_interp.ring import RingSpec


def brute_gl_count(p, n):
    count = 0
    for entries in itertools.product(range(p), repeat=n * n):
        if sympy.Matrix(n, n, list(entries)).det() % p:
            count += 1
    return count


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3)])
def test_gl_order_against_brute_count(p, n):
    assert gl_order(RingSpec.gf(p), n) == brute_gl_count(p, n)


@pytest.mark.parametrize("p,n,which", [(2, 3, "SL"), (3, 2, "GL"), (3, 3, "SL"), (5, 2, "SL"), (3, 3, "T"), (3, 3, "UT"), (5, 3, "K")])
def test_enumeration_matches_prediction(p, n, which):
    spec = RingSpec.gf(p)
    G = enumerate_group(spec, n, which)
    assert len(G) == predicted_order(spec, n, which)
    assert all(membership(x, which) for x in G.elements)


def test_known_orders():
    assert predicted_order(RingSpec.gf(2), 3, "SL") == 168
    assert predicted_order(RingSpec.gf(3), 3, "SL") == 5616
    assert predicted_order(RingSpec.gf(7), 3, "SL") == 5630688


def test_enumeration_cap():
    with pytest.raises(TooLarge) as exc:
        enumerate_group(RingSpec.gf(7), 3, "SL", cap=1000)
    assert exc.value.predicted == 5630688


@given(st.sampled_from([3, 5, 7, 13]), st.integers(0, 2**32))
def test_det_and_inverse_against_sympy(p, seed):
    spec = RingSpec.gf(p)
    a = random_element(spec, 3, "GL", random.Random(seed))
    assert det(a) == sympy.Matrix(a.rows()).det() % p
    assert mat_mul(a, mat_inv(a)).is_identity()


def test_rational_det_against_sympy(rng):
    q = RingSpec.parse("q")
    for _ in range(20):
        a = random_element(q, 4, "GL", rng)
        assert det(a) == sympy.Matrix(a.rows()).det()
        assert mat_mul(mat_inv(a), a).is_identity()


def test_singular_matrix():
    spec = RingSpec.gf(5)
    with pytest.raises(NotInvertible):
        mat_inv(Matrix.from_rows(spec, [[1, 2], [2, 4]]))


def test_transvection_bad_index():
    with pytest.raises(BadIndex):
        transvection(RingSpec.gf(5), 3, 2, 2, 1)


def test_commutator_convention():
    spec = RingSpec.gf(7)
    x, y = transvection(spec, 3, 1, 2, 3), transvection(spec, 3, 2, 3, 5)
    expected = mat_mul(mat_mul(mat_inv(x), mat_inv(y)), mat_mul(x, y))
    assert commutator(x, y) == expected
    assert commutator(x, y) == transvection(spec, 3, 1, 3, 15 % 7)
    assert conjugate(x, y) == mat_mul(mat_mul(mat_inv(y), x), y)


@pytest.mark.parametrize("ring", ["gf:3", "gf:5", "zmod:6"])
@pytest.mark.parametrize("n", [3, 4])
def test_steinberg_suite(ring, n):
    rep = steinberg_suite(RingSpec.parse(ring), n)
    assert rep.passed, rep.failures


@pytest.mark.parametrize("p,n", [(3, 3), (2, 3), (5, 2)])
def test_center_is_scalar_roots(p, n):
    spec = RingSpec.gf(p)
    G = enumerate_group(spec, n, "SL")
    Z = center_of(G)
    assert Z.elements == analytic_center(spec, n, "SL").elements
    assert len(Z) == gcd(n, p - 1)


def test_psl_order():
    spec = RingSpec.gf(5)
    G = enumerate_group(spec, 2, "SL")
    Q = quotient_by_center(G)
    assert len(Q) == 60


@pytest.mark.parametrize("q", [3, 5, 7, 13])
def test_isogeny_kernel_size(q):
    assert len(isogeny_kernel(RingSpec.gf(q), 3)) == gcd(3, q - 1)


def test_diag_elem_det():
    spec = RingSpec.gf(7)
    assert det(diag_elem(spec, 3, 2, 5)) == 5
