import random

import pytest
import sympy
from hypothesis import given, strategies as st

from matgroup_interp.errors import DetNotOne, NotField, NotInvertible, ScheduleTooShort
from matgroup_interp.matgroup import (
    Matrix,
    det,
    enumerate_group,
    mat_mul,
    random_element,
    transvection,
)
from matgroup_interp.ring import RingSpec
from matgroup_interp.wordcalc import (
    TransvectionWord,
    decompose_gl,
    decompose_sl,
    elimination_schedule,
    embedding_count,
    entry_polynomials,
    eval_word,
    lower_central_series,
    published_bound,
    row_major_schedule,
    scheduled_word,
    sigma_pad,
    ut_from_coefficients,
    ut_level,
    ut_normal_form,
    width_report,
)


def test_published_bound():
    assert [published_bound(n) for n in (2, 3, 4)] == [5, 12, 21]


def test_identity_decomposes_to_empty_word():
    spec = RingSpec.gf(5)
    assert decompose_sl(Matrix.identity(spec, 3)).letters == ()


@pytest.mark.parametrize("p", [2, 3])
def test_width_of_sl3(p):
    rep = width_report(RingSpec.gf(p), 3)
    assert rep.round_trip_failures == 0
    assert rep.schedule_failures == 0
    assert rep.max_length <= rep.bound


def test_empirical_widths_frozen():
    # observed maxima of the row-only elimination
    assert width_report(RingSpec.gf(2), 3).max_length == 8
    assert width_report(RingSpec.gf(3), 3).max_length == 11


@given(st.sampled_from([3, 5, 7, 13]), st.sampled_from([2, 3, 4]), st.integers(0, 2**32))
def test_gl_round_trip(p, n, seed):
    spec = RingSpec.gf(p)
    a = random_element(spec, n, "GL", random.Random(seed))
    w = decompose_gl(a)
    assert eval_word(w) == a
    assert w.diag == (n, det(a))


def test_rational_round_trip(rng):
    q = RingSpec.parse("q")
    for _ in range(20):
        a = random_element(q, 3, "GL", rng)
        w = decompose_gl(a)
        assert eval_word(w) == a
        assert w.diag[1] == det(a)


def test_word_product_against_sympy(rng):
    q = RingSpec.parse("q")
    a = random_element(q, 3, "SL", rng)
    w = decompose_sl(a)
    ref = sympy.eye(3)
    for (i, j, v) in w.letters:
        t = sympy.eye(3)
        t[i - 1, j - 1] = sympy.Rational(v.numerator, v.denominator)
        ref = ref * t
    assert ref == sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in a.rows()])


def test_decompose_errors():
    spec = RingSpec.gf(5)
    with pytest.raises(DetNotOne):
        decompose_sl(Matrix.from_rows(spec, [[2, 0], [0, 1]]))
    with pytest.raises(NotInvertible):
        decompose_gl(Matrix.from_rows(spec, [[1, 2], [2, 4]]))
    with pytest.raises(NotField):
        decompose_sl(transvection(RingSpec.zmod(6), 3, 1, 2, 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_entry_polynomials_against_sympy(n):
    s = elimination_schedule(n)
    syms = sympy.symbols(f"a1:{s.m + 1}")
    ref = sympy.eye(n)
    for (i, j), a in zip(s.slots, syms):
        t = sympy.eye(n)
        t[i - 1, j - 1] = a
        ref = ref * t
    polys = entry_polynomials(s, n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ours = sum(
                (c * sympy.Mul(*[syms[v - 1] for v in mono]) for mono, c in polys[(i, j)].terms.items()),
                sympy.Integer(0),
            )
            assert sympy.expand(ours - ref[i - 1, j - 1]) == 0


def test_row_major_polynomials_against_sympy():
    s = row_major_schedule(3, 1)
    syms = sympy.symbols("a1:7")
    ref = sympy.eye(3)
    for (i, j), a in zip(s.slots, syms):
        t = sympy.eye(3)
        t[i - 1, j - 1] = a
        ref = ref * t
    polys = entry_polynomials(s, 3)
    vals = [2, 3, 5, 7, 11, 13]
    F = RingSpec.gf(101)
    for (i, j), P in polys.items():
        assert P.evaluate(F, vals) == int(ref[i - 1, j - 1].subs(dict(zip(syms, vals)))) % 101


@given(st.integers(0, 2**32))
def test_sigma_pad_preserves_value(seed):
    spec = RingSpec.gf(7)
    g = random_element(spec, 3, "SL", random.Random(seed))
    w = decompose_sl(g)
    s = elimination_schedule(3)
    padded = sigma_pad(w, s)
    assert len(padded) == s.m
    assert eval_word(padded) == g
    polys = entry_polynomials(s, 3)
    assert all(polys[(i, j)].evaluate(spec, padded.alphas) == g[i, j] for i in range(1, 4) for j in range(1, 4))


def test_schedule_too_short():
    spec = RingSpec.gf(5)
    w = TransvectionWord(spec, 3, ((2, 1, 1), (1, 2, 1)))
    with pytest.raises(ScheduleTooShort):
        sigma_pad(w, row_major_schedule(3, 0))
    assert embedding_count(w, row_major_schedule(3, 2)) is not None


def test_scheduled_word_length_check():
    with pytest.raises(ValueError):
        scheduled_word(RingSpec.gf(5), 3, elimination_schedule(3), [0])


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 3)])
def test_ut_normal_form_round_trip(p, n):
    spec = RingSpec.gf(p)
    G = enumerate_group(spec, n, "UT")
    for x in G.elements:
        assert ut_from_coefficients(spec, n, ut_normal_form(x)) == x


def test_lower_central_series_ut4_gf2():
    series = lower_central_series(RingSpec.gf(2), 4)
    assert [len(s) for s in series] == [64, 8, 2, 1]
    for k, s in enumerate(series, start=1):
        assert s.elements == ut_level(series[0], k)


def test_commutator_lowers_level():
    spec = RingSpec.gf(3)
    x, y = transvection(spec, 4, 1, 2, 1), transvection(spec, 4, 2, 4, 2)
    from matgroup_interp.matgroup import commutator

    c = commutator(x, y)
    assert c == transvection(spec, 4, 1, 4, 2)
    assert mat_mul(x, y) != mat_mul(y, x)
