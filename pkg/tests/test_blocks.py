import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from sepinv.abelian import GroupSpec, parse_group
from sepinv.blocks import (
    BudgetExceeded,
    ZSequence,
    apply_permutation,
    atoms,
    automorphisms,
    build_S,
    enumerate_block_elements,
    is_atom,
    is_product_one,
    parse_sequence,
    restrict,
)
from sepinv.lattice import IntLattice, kernel_basis

C2, C3, C3C3 = GroupSpec((2,)), GroupSpec((3,)), GroupSpec((3, 3))


def seq(spec, text):
    return parse_sequence(text, spec)


def brute_block_elements(spec, max_length):
    """Every multiset of length <= max_length, filtered by the product-one test."""
    out = set()
    for k in range(max_length + 1):
        for combo in itertools.combinations_with_replacement(range(spec.size), k):
            z = ZSequence.from_indices(spec.size, combo)
            if is_product_one(z, spec):
                out.add(z.values)
    return out


def test_product_one_examples():
    assert is_product_one(ZSequence.zero(3), C3)
    assert is_product_one(seq(C3, "1*(1)+1*(2)"), C3)
    assert not is_product_one(seq(C3, "2*(1)"), C3)
    b3 = seq(C3C3, "2*(1,0)+2*(0,1)+1*(1,1)")
    assert is_product_one(b3, C3C3)
    assert b3.length == 5


def test_text_round_trip():
    b3 = seq(C3C3, "2*(1,0)+2*(0,1)+1*(1,1)")
    assert parse_sequence(b3.text(C3C3), C3C3) == b3
    mixed = ZSequence((0, 2, 0, -1, 0, 0, 0, 0, 3))
    assert parse_sequence(mixed.text(C3C3), C3C3) == mixed
    assert ZSequence.from_sparse(9, mixed.to_sparse()) == mixed
    with pytest.raises(ValueError):
        parse_sequence("2*(1,0)+junk", C3C3)
    for bad in ("1*(3,0)", "1*(1)", "1*(1,0,0)"):
        with pytest.raises(ValueError):
            parse_sequence(bad, C3C3)


def test_enumeration_examples():
    got = {z.values for z in enumerate_block_elements(C2, 2)}
    assert got == {(0, 0), (1, 0), (2, 0), (0, 2)}
    c3 = {z.values for z in enumerate_block_elements(C3, 3)}
    assert {(0, 3, 0), (0, 1, 1), (1, 1, 1)} <= c3
    assert [z.values for z in enumerate_block_elements(C3C3, 0)] == [(0,) * 9]


@pytest.mark.parametrize("text,d", [("C4", 4), ("C2xC2", 4), ("C3xC3", 4), ("C6", 5), ("C2xC4", 4)])
def test_enumeration_matches_brute_force(text, d):
    spec = parse_group(text)
    listed = enumerate_block_elements(spec, d)
    assert {z.values for z in listed} == brute_block_elements(spec, d)
    assert len(listed) == len({z.values for z in listed})
    lengths = [z.length for z in listed]
    assert lengths == sorted(lengths)


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_block_elements(C3C3, 9, budget=100)


def brute_atoms(spec, max_length):
    """Nonzero block elements that are not a sum of two nonzero block elements."""
    elems = [ZSequence(v) for v in brute_block_elements(spec, max_length) if any(v)]
    values = {z.values for z in elems}
    out = set()
    for z in elems:
        split = False
        for y in elems:
            rest = tuple(a - b for a, b in zip(z.values, y.values))
            if y.values != z.values and min(rest) >= 0 and rest in values:
                split = True
                break
        if not split:
            out.add(z.values)
    return out


def test_atoms_of_c3():
    found = atoms(C3, 3)
    assert {z.values for z in found} == {(1, 0, 0), (0, 1, 1), (0, 3, 0), (0, 0, 3)}
    assert [z.values for z in atoms(GroupSpec((1,)))] == [(1,)]


@pytest.mark.parametrize("text", ["C4", "C2xC2", "C5", "C6", "C2xC4"])
def test_atoms_match_brute_force(text):
    spec = parse_group(text)
    assert {z.values for z in atoms(spec)} == brute_atoms(spec, spec.size)


def test_c3xc3_atoms_and_davenport():
    found = atoms(C3C3, 6)
    by_len = {}
    for a in found:
        by_len[a.length] = by_len.get(a.length, 0) + 1
    assert by_len == {1: 1, 2: 4, 3: 16, 4: 24, 5: 24}
    b1 = seq(C3C3, "1*(1,0)+1*(0,1)+2*(1,1)")
    b2 = seq(C3C3, "1*(1,0)+2*(0,1)+1*(2,1)")
    b3 = seq(C3C3, "2*(1,0)+2*(0,1)+1*(1,1)")
    values = {a.values for a in found}
    auts = automorphisms(C3C3)
    assert len(auts) == 48
    for b in (b1, b2, b3):
        assert is_atom(b, C3C3)
        assert {apply_permutation(b, p).values for p in auts} <= values


def test_restrict():
    elems = enumerate_block_elements(C3, 3)
    assert restrict(elems, range(3)) == elems
    assert [z.values for z in restrict(elems, [])] == [(0, 0, 0)]
    assert {z.values for z in restrict(elems, [1])} == {(0, 0, 0), (0, 3, 0)}


def test_build_S_variants():
    assert {z.values for z in build_S(C2)} == {(1, 0), (0, 2)}
    assert {z.values for z in build_S(C3)} == {
        (1, 0, 0), (0, 1, 1), (0, 3, 0), (0, 0, 3)
    }
    with_units = {z.values for z in build_S(C3, include_unit_triples=True)}
    assert (1, 1, 1) in with_units and (1, 2, 0) not in with_units
    for spec in (C2, C3, C3C3, GroupSpec((2, 4))):
        n = spec.size
        assert len(build_S(spec)) <= 1 + (n - 1) + (n - 1) ** 2
        for z in build_S(spec):
            assert is_product_one(z, spec) and z.length <= 3


@pytest.mark.parametrize("text", ["C2", "C3", "C4", "C2xC2", "C6", "C3xC3", "C2xC4"])
def test_S_spans_the_product_one_lattice(text):
    spec = parse_group(text)
    kernel = kernel_basis(range(spec.size), spec)
    for flag in (True, False):
        span = IntLattice(spec.size, [z.values for z in build_S(spec, flag)])
        assert span == kernel


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["C3", "C4", "C2xC2", "C5"]), st.integers(0, 2**32 - 1))
def test_sum_of_block_elements_is_block_element(text, seed):
    spec = parse_group(text)
    rng = random.Random(seed)
    elems = enumerate_block_elements(spec, 4)
    a, b = rng.choice(elems), rng.choice(elems)
    assert is_product_one(a + b, spec)
    assert is_product_one(a - b, spec)
