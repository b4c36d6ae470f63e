import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sepinv.abelian import GroupSpec, parse_group
from sepinv.blocks import ZSequence
from sepinv.cyclotomic import Cyclotomic
from sepinv.galois import galois_group, parse_field
from sepinv.polynomial import ExactPolynomial, monomials_up_to, parse_polynomial
from sepinv.presets import c4_preset, s3_group, sec6_group, sec6_invariants
from sepinv.separation import (
    NotInTorus,
    SeparationError,
    act_diagonal,
    act_regular,
    build_regular_representation,
    companion_matrix,
    eval_monomial,
    from_character_basis,
    irreducible_decomposition,
    irreducible_real_form,
    matrix_power,
    reynolds_orbit_sum,
    same_orbit,
    same_orbit_diagonal,
    separated_by_degree,
    to_character_basis,
    verify_galois_compatibility,
    verify_invariance,
    verify_torus_separation,
)

C3, C4 = GroupSpec((3,)), GroupSpec((4,))
W3 = Cyclotomic.root(3)


def test_dft_examples():
    assert to_character_basis([1, 0, 0], C3) == [1, 1, 1]
    assert to_character_basis([1, 1, 1, 1], C4) == [4, 0, 0, 0]
    assert to_character_basis([1, -1, 0], C3) == [0, 1 - W3, 1 - W3**2]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["C3", "C4", "C2xC2", "C6", "C3xC3"]), st.integers(0, 2**32 - 1))
def test_dft_round_trip_and_descent(text, seed):
    spec = parse_group(text)
    rng = random.Random(seed)
    v = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(spec.size)]
    c = to_character_basis(v, spec)
    assert from_character_basis(c, spec) == v
    assert verify_galois_compatibility(c, galois_group(parse_field("Q"), spec), spec)
    # the regular action becomes the diagonal one
    h = rng.randrange(spec.size)
    assert to_character_basis(act_regular(h, v, spec), spec) == act_diagonal(h, c, spec)


def test_galois_compatibility_examples():
    gamma = galois_group(parse_field("R"), C3)
    assert not verify_galois_compatibility([Cyclotomic.rational(3, 0), 1 - W3, 1 - W3], gamma, C3)
    zero = [Cyclotomic.rational(3, 0)] * 3
    assert verify_galois_compatibility(zero, gamma, C3)


def test_eval_monomial():
    c = [Cyclotomic.rational(3, 0), 1 - W3, 1 - W3**2]
    assert eval_monomial((0, 0, 0), c) == 1
    assert eval_monomial(ZSequence((0, 1, 1)), c) == 3
    with pytest.raises(SeparationError):
        eval_monomial((0, -1, 0), c)


def test_torus_examples():
    zero = Cyclotomic.rational(3, 0)
    v = [zero, 1 - W3, 1 - W3**2]
    w = [zero, 2 * (1 - W3), 2 * (1 - W3**2)]
    assert not verify_torus_separation(v, w, C3)
    assert eval_monomial((0, 1, 1), w) == 12
    assert verify_torus_separation(v, act_diagonal(1, v, C3), C3)
    with pytest.raises(NotInTorus):
        verify_torus_separation([zero, zero, 1 - W3], v, C3)


@pytest.mark.parametrize("text", ["C3", "C4", "C2xC2", "C5", "C3xC3"])
def test_torus_agreement_means_same_orbit(text):
    spec = parse_group(text)
    e = spec.exponent
    rng = random.Random(11)
    roots = [Cyclotomic.root(e, k) for k in range(e)]
    checked = 0
    while checked < 100:
        v = [Cyclotomic.rational(e, rng.choice((1, 2)))] + [
            rng.choice(roots) * rng.choice((1, 2)) for _ in range(spec.size - 1)
        ]
        if rng.random() < 0.5:
            w = act_diagonal(rng.randrange(spec.size), v, spec)
        else:
            w = [v[0]] + [x * rng.choice(roots) for x in v[1:]]
        assert verify_torus_separation(v, w, spec) == same_orbit_diagonal(v, w, spec)
        checked += 1


def test_same_orbit_examples():
    v = [3, 4, -3, -4]
    assert same_orbit(v, v, C4)
    assert not same_orbit(v, [5, 0, -5, 0], C4)
    assert same_orbit(v, [4, -3, -4, 3], C4)
    assert not same_orbit([2, 1, 0, 1], [2, 1, 0, -1], s3_group())


def test_regular_representation():
    c2 = build_regular_representation(GroupSpec((2,)))
    assert sorted(c2.elements) == sorted([((1, 0), (0, 1)), ((0, 1), (1, 0))])
    c4 = build_regular_representation(C4)
    assert c4.order == 4
    x1 = ExactPolynomial.variable(4, 0)
    assert x1.compose_linear(c4.generators[0]) != x1
    # powers of the shift cycle every coordinate through all four positions
    shift = c4.generators[0]
    images = {tuple(matrix_power(shift, k)[0]) for k in range(4)}
    assert len(images) == 4


def test_reynolds_and_invariance():
    group = build_regular_representation(C4)
    names = ["x1", "x2", "x3", "x4"]
    assert reynolds_orbit_sum((1, 0, 0, 0), group) == parse_polynomial("x1+x2+x3+x4", names)
    assert not verify_invariance(ExactPolynomial.variable(4, 0), group)
    s3 = s3_group()
    r = reynolds_orbit_sum((2, 1, 0, 0), s3)
    assert verify_invariance(r, s3)
    with pytest.raises(SeparationError):
        reynolds_orbit_sum((7, 0, 0, 0), s3)


def test_sec6_lists():
    group = sec6_group()
    low, high = sec6_invariants()
    assert len(low) == 11 and len(high) == 12
    assert all(p.degree <= 3 for p in low)
    assert sorted(p.degree for p in high) == [4] * 6 + [5] * 6
    assert all(verify_invariance(p, group) for p in low + high)
    assert verify_invariance(parse_polynomial("x5^2 + x6^2", [f"x{i}" for i in range(1, 7)]), group)
    assert not verify_invariance(ExactPolynomial.variable(6, 0), group)
    assert group.order == 9


def test_sec6_listed_cubics_agree_with_reynolds_sums():
    group = sec6_group()
    low, _ = sec6_invariants()
    monos = monomials_up_to(6, 3)
    rng = random.Random(5)
    pts = [tuple(Fraction(rng.choice((-1, 0, 1))) for _ in range(6)) for _ in range(30)]
    listed = [tuple(p(x) for p in low) for x in pts]
    sums = [tuple(reynolds_orbit_sum(m, group)(x) for m in monos[:20]) for x in pts]
    full = [separated_by_degree(x, pts[0], group, 3).separated for x in pts]
    for i, x in enumerate(pts):
        assert (listed[i] != listed[0]) == full[i]
        if listed[i] == listed[0]:
            assert sums[i] == sums[0]


def test_c4_witness_both_routes():
    preset = c4_preset()
    for route in (C4, preset.group):
        assert not separated_by_degree(preset.v, preset.w, route, 3).separated
        r = separated_by_degree(preset.v, preset.w, route, 4)
        assert r.separated and r.value_v != r.value_w


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 4, 5]), st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_character_and_reynolds_routes_agree(p, seed, d):
    spec = GroupSpec((p,))
    group = build_regular_representation(spec)
    rng = random.Random(seed)
    v = [Fraction(rng.randint(-2, 2)) for _ in range(p)]
    w = [Fraction(rng.randint(-2, 2)) for _ in range(p)]
    assert separated_by_degree(v, w, spec, d).separated == separated_by_degree(v, w, group, d).separated


def test_irreducible_forms():
    triv = irreducible_real_form((0,), C3, parse_field("Q"))
    assert triv.companion == ((1,),)
    f = irreducible_real_form((1,), C3, parse_field("R"))
    assert f.companion == ((0, -1), (1, -1))
    assert matrix_power(f.companion, 3) == ((1, 0), (0, 1))
    half = irreducible_real_form((2,), C4, parse_field("Q"))
    assert half.companion == ((-1,),)
    for text, field in [("C3xC3", "R"), ("C5", "Q"), ("C2xC4", "R"), ("C6", "Q"), ("C4", "C")]:
        spec = parse_group(text)
        forms = irreducible_decomposition(spec, parse_field(field))
        assert sum(f.dimension for f in forms) == spec.size
        for form in forms:
            for n, image in zip(spec.orders, form.generator_images):
                ident = tuple(tuple(int(i == j) for j in range(form.dimension)) for i in range(form.dimension))
                assert matrix_power(image, n) == ident


def test_companion_matrix():
    assert companion_matrix([1, 1, 1]) == ((0, -1), (1, -1))
