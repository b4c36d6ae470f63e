import json
import random

import pytest

from sepinv.abelian import GroupSpec, parse_group
from sepinv.blocks import ZSequence, build_S, enumerate_block_elements, is_product_one, parse_sequence
from sepinv.certify import (
    NotProductOne,
    build_T,
    check_condition_star,
    decompose_into_S,
    minimal_certified_degree,
    recheck_certificate,
)
from sepinv.galois import parse_field
from sepinv.lattice import IntLattice, restrict_to

Q, R, C = parse_field("Q"), parse_field("R"), parse_field("C")
C3C3 = GroupSpec((3, 3))


def test_c5_examples():
    c5 = GroupSpec((5,))
    assert check_condition_star(c5, Q, 3).valid
    cert = check_condition_star(c5, R, 3)
    assert not cert.valid
    first = cert.first_failure
    assert first.subset == (1, 4)
    assert first.witness == (0, 5, 0, 0, 0)
    # the span at degree 3 is just the pair d_1 + d_4
    assert IntLattice(2, [restrict_to(v, (1, 4)) for v in first.hnf]) == IntLattice(2, [(1, 1)])


@pytest.mark.parametrize(
    "text,field,expected",
    [("C2", Q, 2), ("C3", Q, 3), ("C5", Q, 3), ("C7", Q, 3), ("C3", R, 3), ("C5", R, 5),
     ("C3xC3", R, 3), ("C3xC3", C, 4), ("C4", Q, 4), ("C5", C, 5)],
)
def test_minimal_degrees(text, field, expected):
    assert minimal_certified_degree(parse_group(text), field).degree == expected


def test_trail_and_cap():
    search = minimal_certified_degree(GroupSpec((5,)), R, max_degree=4)
    assert search.degree == 0
    assert [s["valid"] for s in search.trail] == [False] * 4
    assert all(s["first_failing_subset"] == [1, 4] for s in search.trail)


def _length3_identity_terms():
    s = lambda t: parse_sequence(t, C3C3)
    b1, b2, b3 = s("1*(1,0)+1*(0,1)+2*(1,1)"), s("1*(1,0)+2*(0,1)+1*(2,1)"), s("2*(1,0)+2*(0,1)+1*(1,1)")
    return [
        (b1, [(1, s("1*(1,0)+1*(0,1)+1*(2,2)")), (2, s("1*(1,1)+1*(2,2)")), (-1, s("3*(2,2)"))]),
        (b2, [(1, s("1*(1,0)+1*(0,2)+1*(2,1)")), (2, s("1*(0,1)+1*(0,2)")), (-1, s("3*(0,2)"))]),
        (b3, [(2, s("1*(1,0)+1*(0,1)+1*(2,2)")), (1, s("1*(1,1)+1*(2,2)")), (-1, s("3*(2,2)"))]),
    ]


def test_c3xc3_real_certificate_covers_the_long_atoms():
    cert = check_condition_star(C3C3, R, 3)
    assert cert.valid and len(cert.subsets) == 32
    for b, terms in _length3_identity_terms():
        total = ZSequence.zero(9)
        for c, z in terms:
            assert z.length <= 3 and is_product_one(z, C3C3)
            total = total + c * z
        assert total == b
        # the smallest stable subset containing b certifies it
        ev = min((e for e in cert.subsets if b.support <= set(e.subset)), key=lambda e: len(e.subset))
        span = IntLattice(len(ev.subset), [restrict_to(v, ev.subset) for v in ev.hnf])
        assert restrict_to(b.values, ev.subset) in span


def test_b3_over_complex_field_needs_degree_4():
    b1 = parse_sequence("1*(1,0)+1*(0,1)+2*(1,1)", C3C3)
    b3 = parse_sequence("2*(1,0)+2*(0,1)+1*(1,1)", C3C3)
    assert b1 + b1 - ZSequence.delta(9, C3C3.index((1, 1)), 3) == b3
    cert = check_condition_star(C3C3, C, 3)
    assert not cert.valid
    assert check_condition_star(C3C3, C, 4).valid


def test_workers_give_identical_certificates():
    a = check_condition_star(C3C3, R, 3).to_json()
    b = check_condition_star(C3C3, R, 3, workers=2).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_recheck_certificate_and_tampering():
    for spec, field, d in [(C3C3, R, 3), (GroupSpec((5,)), R, 3), (GroupSpec((2, 4)), Q, 4)]:
        data = json.loads(json.dumps(check_condition_star(spec, field, d).to_json()))
        assert recheck_certificate(data, spec)
    data = check_condition_star(C3C3, R, 3).to_json()
    # drop a kernel vector from the largest subset: the index check must notice
    entry = data["subsets"][-1]
    entry["kernel_vectors"] = entry["kernel_vectors"][1:]
    assert not recheck_certificate(data, C3C3)
    data = check_condition_star(GroupSpec((5,)), R, 3).to_json()
    data["valid"] = True
    assert not recheck_certificate(data, GroupSpec((5,)))


def test_condition_star_against_direct_span_check():
    # d = |G| always passes, and agrees with a span computed from scratch
    for text, field in [("C4", R), ("C2xC2", Q), ("C6", R)]:
        spec = parse_group(text)
        cert = check_condition_star(spec, field, spec.size)
        assert cert.valid
        elems = enumerate_block_elements(spec, spec.size)
        for ev in cert.subsets:
            span = IntLattice(len(ev.subset), [restrict_to(b.values, ev.subset) for b in elems
                                                if b.support <= set(ev.subset)])
            assert all(restrict_to(v, ev.subset) in span for v in ev.kernel_vectors)


def test_decompose_examples():
    c3 = GroupSpec((3,))
    dec = decompose_into_S(parse_sequence("3*(1)", c3), c3)
    assert [(c, z.values) for c, z in dec.terms] == [(1, (0, 3, 0))]
    dec = decompose_into_S(parse_sequence("2*(1)+2*(2)", c3), c3)
    assert [(c, z.values) for c, z in dec.terms] == [(2, (0, 1, 1))]
    b1 = parse_sequence("1*(1,0)+1*(0,1)+2*(1,1)", C3C3)
    assert decompose_into_S(b1, C3C3).recombine() == b1
    with pytest.raises(NotProductOne):
        decompose_into_S(parse_sequence("1*(1)", c3), c3)


def test_decompose_signed_inputs():
    rng = random.Random(3)
    for text in ("C4", "C2xC2", "C3xC3", "C2xC4"):
        spec = parse_group(text)
        allowed = {z.values for z in build_S(spec)}
        gens = [z for z in enumerate_block_elements(spec, 4) if not z.is_zero()]
        for _ in range(40):
            s = ZSequence.zero(spec.size)
            for _ in range(rng.randint(1, 4)):
                s = s + rng.choice((-2, -1, 1, 3)) * rng.choice(gens)
            dec = decompose_into_S(s, spec)
            assert dec.recombine() == s
            assert all(z.values in allowed for _, z in dec.terms)


def test_build_T():
    assert set(build_T(GroupSpec((2,)))) >= {(1, 0), (0, 2)}
    t3 = set(build_T(GroupSpec((3,))))
    assert {(1, 0, 0), (0, 1, 1), (0, 3, 0), (0, 0, 3)} <= t3
    assert all(sum(e) <= 3 for e in build_T(C3C3))
