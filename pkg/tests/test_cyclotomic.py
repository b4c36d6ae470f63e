import cmath
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from sepinv.cyclotomic import (
    Cyclotomic,
    CyclotomicError,
    GaloisAutomorphism,
    cyc_add,
    cyc_inv,
    cyc_mul,
    cyclotomic_polynomial,
    galois_apply,
    totient,
)


def numeric(a: Cyclotomic) -> complex:
    w = cmath.exp(2j * cmath.pi / a.order)
    return sum(complex(c) * w**i for i, c in enumerate(a.coeffs))


def numeric_phi(n: int) -> list[int]:
    """Coefficients of prod (x - w^k), k coprime to n, rounded."""
    poly = [complex(1)]
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            root = cmath.exp(2j * cmath.pi * k / n)
            new = [0j] * (len(poly) + 1)
            for i, c in enumerate(poly):
                new[i + 1] += c
                new[i] -= root * c
            poly = new
    return [round(c.real) for c in poly]


def test_phi_small_cases():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(5) == (1, 1, 1, 1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


@pytest.mark.parametrize("n", range(1, 41))
def test_phi_matches_numeric_roots(n):
    assert list(cyclotomic_polynomial(n)) == numeric_phi(n)
    assert len(cyclotomic_polynomial(n)) == totient(n) + 1


def test_cube_root_relations():
    w = Cyclotomic.root(3)
    assert cyc_mul(w, w * w).coeffs == (1, 0)
    assert cyc_add(1 - w, 1 - w**2) == 3


def test_inverse_of_fifth_root():
    w = Cyclotomic.root(5)
    assert cyc_inv(w) == -1 - w - w**2 - w**3
    assert cyc_inv(w) == w**4


def test_division_by_zero_and_mismatch():
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.rational(5, 0).inverse()
    with pytest.raises(CyclotomicError):
        Cyclotomic.root(3) + Cyclotomic.root(5)


def test_galois_examples():
    w3 = Cyclotomic.root(3)
    assert galois_apply(GaloisAutomorphism(3, 2), w3) == w3**2
    w5 = Cyclotomic.root(5)
    a = 1 + w5 + w5**4
    assert galois_apply(GaloisAutomorphism(5, 2), a) == 1 + w5**2 + w5**3
    assert galois_apply(GaloisAutomorphism(5, 1), a) == a
    with pytest.raises(CyclotomicError):
        GaloisAutomorphism(6, 2)


def test_json_round_trip_and_decimals_rejected():
    a = Cyclotomic(12, [Fraction(1, 3), -2, 0, Fraction(7, 5)])
    assert Cyclotomic.from_json(a.to_json()) == a
    assert a.to_json()["coeffs"][0] == "1/3"
    with pytest.raises(ValueError):
        Cyclotomic.from_json({"n": 3, "coeffs": ["0.5", "1"]})


def test_rational_elements_compare_and_hash_like_fractions():
    half = Cyclotomic.rational(7, Fraction(1, 2))
    assert half == Fraction(1, 2)
    assert hash(half) == hash(Fraction(1, 2))
    assert half.is_rational() and not Cyclotomic.root(7).is_rational()


# --- property tests -----------------------------------------------------------

orders = st.sampled_from([3, 4, 5, 7, 8, 9, 12, 15])
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def elements(draw, n=None):
    n = n or draw(orders)
    coeffs = draw(st.lists(small, min_size=1, max_size=n + 2))
    return Cyclotomic(n, coeffs)


@st.composite
def pairs(draw):
    n = draw(orders)
    return draw(elements(n)), draw(elements(n)), draw(elements(n))


@settings(max_examples=60, deadline=None)
@given(pairs())
def test_field_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * a.inverse() == 1


@settings(max_examples=60, deadline=None)
@given(pairs())
def test_matches_complex_evaluation(t):
    a, b, _ = t
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-6
    assert abs(numeric(a + b) - numeric(a) - numeric(b)) < 1e-9
    if a:
        assert abs(numeric(a.inverse()) * numeric(a) - 1) < 1e-6


@settings(max_examples=60, deadline=None)
@given(pairs(), st.integers(1, 60), st.integers(1, 60))
def test_galois_is_a_field_automorphism(t, j, k):
    a, b, _ = t
    n = a.order
    if gcd(j, n) != 1 or gcd(k, n) != 1:
        return
    s, u = GaloisAutomorphism(n, j), GaloisAutomorphism(n, k)
    assert s(a + b) == s(a) + s(b)
    assert s(a * b) == s(a) * s(b)
    assert (s @ u)(a) == s(u(a))
    # the fixed field of the full Galois group is Q
    trace = sum((a.galois(m) for m in range(1, n) if gcd(m, n) == 1), Cyclotomic.rational(n, 0))
    assert trace.is_rational()
