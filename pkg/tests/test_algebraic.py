from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from negbeta.algebraic import (
    AlgebraicNumber,
    NEITHER,
    PERRON_NOT_PISOT,
    PISOT,
    b_of,
    char_polynomial,
    classify_perron_pisot,
    conjugate_modulus_margin,
    isolate_real_roots,
    largest_root_gt1,
    p_polynomial,
    poly_from_descending,
    root_upper_bound,
    shift_root,
)
from negbeta.errors import SupNotFixedError
from negbeta.words import canonicalize, compare_with_u, sup_of_shifts, word


def sup_fixed_words(max_digit=3):
    return st.builds(
        canonicalize,
        st.lists(st.integers(0, max_digit), max_size=4),
        st.lists(st.integers(0, max_digit), min_size=1, max_size=4),
    ).map(sup_of_shifts)


# --- evaluation polynomials ------------------------------------------------------

def test_p_polynomial_single_digit():
    assert p_polynomial("2") == poly_from_descending(-1, 3)


def test_p_polynomial_two_digits():
    assert p_polynomial("10") == poly_from_descending(1, -2, 1)


def test_p_polynomial_three_digits():
    assert p_polynomial("100") == poly_from_descending(-1, 2, -1, 1)


def test_char_polynomial_worked_examples():
    assert char_polynomial(word("(30121023)")) == poly_from_descending(
        1, -4, 1, -2, 3, -2, 1, -3, 3)
    assert char_polynomial(word("211(210)")) == poly_from_descending(
        1, -3, 2, -1, 0, 0, -1)
    assert char_polynomial(word("21(0)")) == poly_from_descending(1, -2, -1, 1)


def test_polynomial_formatting():
    assert str(poly_from_descending(1, -2, -1, 1)) == "x^3 - 2x^2 - x + 1"
    assert str(poly_from_descending(1, -4, 1, -2, 3, -2, 1, -3, 3)) == \
        "x^8 - 4x^7 + x^6 - 2x^5 + 3x^4 - 2x^3 + x^2 - 3x + 3"


# --- root isolation ------------------------------------------------------------------

def test_golden_ratio_isolated():
    r = largest_root_gt1(poly_from_descending(1, -1, -1))
    lo, hi = r.refine(Fraction(1, 10**12))
    assert hi - lo <= Fraction(1, 10**12)
    assert abs(float((lo + hi) / 2) - 1.6180339887498949) < 1e-11
    assert r.decimal(10) == "1.6180339887"


def test_rational_root_detected_exactly():
    r = largest_root_gt1(poly_from_descending(1, -2, 0))
    assert r.is_rational() and r.exact == 2


def test_no_real_roots():
    assert largest_root_gt1(poly_from_descending(1, 0, 1)) is None


def test_roots_below_one_are_ignored():
    # x^2 - 3x + 1 has roots 0.38 and 2.62; only the latter counts
    roots = isolate_real_roots(poly_from_descending(1, -3, 1), Fraction(1),
                               root_upper_bound(poly_from_descending(1, -3, 1)))
    assert len(roots) == 1
    assert 2.6 < float(roots[0]) < 2.62


def test_isolation_versus_float_eval_on_table_polys():
    table = [
        (poly_from_descending(1, -1, -1), 1.6180339887),
        (poly_from_descending(1, -2, 1, -1), 1.7548776662),
        (poly_from_descending(1, -1, -1, -1), 1.8392867552),
        (poly_from_descending(1, -2, -1, 1), 2.2469796037),
    ]
    for poly, expected in table:
        r = largest_root_gt1(poly)
        assert abs(float(r) - expected) < 1e-10


def test_mixed_rational_and_irrational_roots_ordered():
    # (x - 2)(x^2 - x - 1): golden then 2
    poly = poly_from_descending(1, -3, 1, 2)
    roots = isolate_real_roots(poly, Fraction(1), root_upper_bound(poly))
    assert len(roots) == 2
    assert not roots[0].is_rational() and roots[1].is_rational()
    assert roots[1].exact == 2
    golden = largest_root_gt1(poly_from_descending(1, -1, -1))
    assert roots[0].equals(golden)


def test_algebraic_equality_across_defining_polynomials():
    a = largest_root_gt1(poly_from_descending(1, -1, -1))
    b = largest_root_gt1(poly_from_descending(1, 0, -2, -1))  # x^3 - 2x - 1 = (x^2-x-1)(x+1)
    assert a.equals(b)
    c = largest_root_gt1(poly_from_descending(1, -2, -1, 1))
    assert not a.equals(c)
    assert a.compare(c) < 0


def test_floor_of_algebraic():
    assert largest_root_gt1(poly_from_descending(1, -1, -1)).floor() == 1
    assert largest_root_gt1(poly_from_descending(1, -2, -1, 1)).floor() == 2
    assert AlgebraicNumber.from_rational(Fraction(2)).floor() == 2
    assert AlgebraicNumber.from_rational(Fraction(7, 3)).floor() == 2


def test_shift_root():
    g = largest_root_gt1(poly_from_descending(1, -1, -1))
    up = shift_root(g, Fraction(1, 20))
    lo, hi = up.refine(Fraction(1, 10**9))
    assert abs(float((lo + hi) / 2) - (1.6180339887 + 0.05)) < 1e-8
    down = shift_root(up, Fraction(-1, 20))
    assert down.equals(g)


# --- the base attached to a word -----------------------------------------------------

def test_b_of_examples():
    assert b_of(word("(100)")) == 1
    golden = b_of(word("1(0)"))
    assert golden.decimal(4) == "1.6180"
    assert b_of(word("211(210)")).decimal(3) == "2.343"
    assert b_of(word("(10)")).exact == 2


def test_b_of_requires_sup_fixed():
    with pytest.raises(SupNotFixedError):
        b_of(word("(12)"))


@given(sup_fixed_words())
@settings(max_examples=200)
def test_b_of_bounded_by_max_digit(w):
    b = b_of(w)
    if b == 1:
        return
    assert b.compare(Fraction(w.max_digit() + 1)) <= 0


@given(sup_fixed_words())
@settings(max_examples=60, deadline=None)
def test_defining_series_vanishes_at_the_root(w):
    if compare_with_u(w) <= 0:
        return
    b = b_of(w)
    lo, hi = b.refine(Fraction(1, 2**64))
    x = (lo + hi) / 2
    terms = 200
    acc = Fraction(1)
    for k in range(1, terms + 1):
        acc += Fraction(w.digit(k) + 1) / (-x) ** k
    # certified error: interval width amplified by the series derivative bound
    # plus the geometric tail
    tail = Fraction(w.max_digit() + 1) * Fraction(1, (x - 1)) / x ** terms
    assert abs(acc) < Fraction(1, 2**40) + 2 * tail


@given(sup_fixed_words(max_digit=2), sup_fixed_words(max_digit=2))
@settings(max_examples=150)
def test_b_monotone_in_alt_lex(v, w):
    if compare_with_u(v) <= 0 or compare_with_u(w) <= 0:
        return
    from negbeta.words import alt_lex_compare

    c = alt_lex_compare(v, w)
    if c == 0:
        return
    small, big = (v, w) if c < 0 else (w, v)
    assert b_of(small).compare(b_of(big)) <= 0


# --- Pisot / Perron classification -----------------------------------------------------

def test_classify_golden_is_pisot():
    assert classify_perron_pisot(largest_root_gt1(poly_from_descending(1, -1, -1))) == PISOT


def test_classify_rational():
    assert classify_perron_pisot(AlgebraicNumber.from_rational(Fraction(2))) == PISOT
    assert classify_perron_pisot(AlgebraicNumber.from_rational(Fraction(3, 2))) == NEITHER


def test_classify_extremal_base_n5():
    from negbeta.analysis import extremal_word

    b = b_of(extremal_word(5))
    assert classify_perron_pisot(b) == PISOT
    assert conjugate_modulus_margin(b) >= 1e-6


def test_classify_perron_not_pisot():
    # largest root of x^3 - x^2 - 2 is about 1.695; the complex pair has
    # modulus sqrt(2/1.695) > 1, so Perron but not Pisot
    r = largest_root_gt1(poly_from_descending(1, -1, 0, -2))
    assert classify_perron_pisot(r) == PERRON_NOT_PISOT


def test_classify_non_monic_is_neither():
    r = largest_root_gt1(poly_from_descending(2, -2, -1))
    assert r is not None and not r.is_rational()
    assert classify_perron_pisot(r) == NEITHER
