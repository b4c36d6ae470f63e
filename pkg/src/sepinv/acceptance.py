"""Reproducibility suite: every headline computation as a named pass/fail check.

Each check returns a :class:`CriterionResult`; the ``reproduce`` command and
``tests/test_acceptance.py`` share them.  Sampled checks draw from
``random.Random(seed)`` so a fixed seed gives identical output.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .abelian import GroupSpec, parse_group
from .blocks import (
    ZSequence,
    apply_permutation,
    atoms,
    automorphisms,
    build_S,
    enumerate_block_elements,
    parse_sequence,
)
from .certify import decompose_into_S, minimal_certified_degree
from .galois import (
    ALL_ROOTS,
    RATIONALS,
    REALS,
    FieldDescriptor,
    galois_group,
    masked_stable_subsets,
    orbit_partition,
)
from .lattice import IntLattice, kernel_basis, restrict_to
from .presets import c4_preset, cp_preset, s3_preset, sec6_group, sec6_invariants
from .separation import (
    build_regular_representation,
    matvec,
    reynolds_values,
    same_orbit,
    separated_by_degree,
    verify_invariance,
)
from .polynomial import monomials_up_to

FIELD_Q = FieldDescriptor(RATIONALS)
FIELD_R = FieldDescriptor(REALS)
FIELD_C = FieldDescriptor(ALL_ROOTS)

BOUND_TIME_LIMIT = 5.0


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.key}: {self.title} | {self.detail}"

    def to_json(self) -> dict:
        return {"key": self.key, "title": self.title, "passed": self.passed, "detail": self.detail}


def _bound(spec_text: str, field: FieldDescriptor, workers: int = 1):
    t0 = time.perf_counter()
    search = minimal_certified_degree(parse_group(spec_text), field, workers=workers)
    return search, time.perf_counter() - t0


def check_cp_rationals(seed: int = 0, workers: int = 1) -> tuple[bool, str]:
    expected = {2: 2, 3: 3, 5: 3, 7: 3, 11: 3}
    got, slow = {}, []
    for p, want in expected.items():
        search, secs = _bound(f"C{p}", FIELD_Q, workers)
        got[p] = search.degree
        if secs > BOUND_TIME_LIMIT:
            slow.append(p)
    ok = got == expected and not slow
    detail = " ".join(f"C{p}->{d}" for p, d in got.items())
    if slow:
        detail += f"; over {BOUND_TIME_LIMIT:g}s: {slow}"
    return ok, detail


def check_cp_reals(seed: int = 0, workers: int = 1) -> tuple[bool, str]:
    ok = True
    parts = []
    for p in (3, 5, 7):
        spec = GroupSpec((p,))
        search, _ = _bound(f"C{p}", FIELD_R, workers)
        good = search.degree == p
        for step in search.trail[:-1]:
            sub = step["first_failing_subset"]
            # the first failing subset must be an inverse pair {chi, chi^-1}
            pair = (
                sub is not None
                and len(sub) == 2
                and spec.neg_table[sub[0]] == sub[1]
                and sub[0] != 0
            )
            good = good and not step["valid"] and pair
        ok = ok and good
        parts.append(f"C{p}->{search.degree}")
    return ok, " ".join(parts) + ", every d<p fails on an inverse pair" if ok else " ".join(parts)


def check_c3xc3(seed: int = 0, workers: int = 1) -> tuple[bool, str]:
    real, _ = _bound("C3xC3", FIELD_R, workers)
    cplx, _ = _bound("C3xC3", FIELD_C, workers)
    return real.degree == 3 and cplx.degree == 4, f"R->{real.degree} C->{cplx.degree}"


def _preset_checks(preset) -> tuple[bool, list[str]]:
    notes = []
    ok = True
    vals_v = {k: p(preset.v) for k, p in preset.invariants.items()}
    vals_w = {k: p(preset.w) for k, p in preset.invariants.items()}
    if preset.expected_v and (vals_v != preset.expected_v or vals_w != preset.expected_w):
        ok = False
        notes.append("invariant values differ from expected")
    if not all(verify_invariance(p, preset.group) for p in preset.invariants.values()):
        ok = False
        notes.append("listed polynomial not invariant")
    d_no, d_yes = preset.expected_unseparated, preset.expected_separated
    routes = [preset.group] + ([preset.spec] if preset.spec is not None else [])
    for route in routes:
        if separated_by_degree(preset.v, preset.w, route, d_no).separated:
            ok = False
            notes.append(f"separated at {d_no}")
        if d_yes and not separated_by_degree(preset.v, preset.w, route, d_yes).separated:
            ok = False
            notes.append(f"not separated at {d_yes}")
    return ok, notes


def check_c4(seed: int = 0, workers: int = 1) -> tuple[bool, str]:
    preset = c4_preset()
    ok, notes = _preset_checks(preset)
    fv = [str(p(preset.v)) for p in preset.invariants.values()]
    fw = [str(p(preset.w)) for p in preset.invariants.values()]
    detail = f"f(v)=[{','.join(fv)}] f(w)=[{','.join(fw)}]; not separated at 3, separated at 4"
    return ok, detail if ok else "; ".join(notes)


def check_cp_witness(seed: int = 0, workers: int = 1) -> tuple[bool, str]:
    ok = True
    parts = []
    for p in (3, 5):
        preset = cp_preset(p)
        good, notes = _preset_checks(preset)
        ok = ok and good
        s = preset.invariants[preset.separator]
        parts.append(f"C{p}: orbit sum {s(preset.v)}/{s(preset.w)}" + ("" if good else f" ({'; '.join(notes)})"))
    return ok, ", ".join(parts)


def check_s3(seed: int = 0, workers: int = 1) -> tuple[bool, str]:
    preset = s3_preset()
    ok, notes = _preset_checks(preset)
    a = preset.invariants["a"]
    detail = f"a(v)={a(preset.v)} a(w)={a(preset.w)}; not separated at 3, separated at 4"
    return ok, detail if ok else "; ".join(notes)


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-2, 2), rng.choice((1, 1, 2)))


def _sec6_points(rng: random.Random, count: int) -> list[tuple]:
    """Random rational points; half are norm-preserving rational moves of earlier ones."""
    points: list[tuple] = []
    while len(points) < count:
        if len(points) < count // 2 or rng.random() < 0.2:
            pt = [_random_rational(rng) for _ in range(6)]
            if rng.random() < 0.3:
                b = rng.randrange(3)
                pt[2 * b] = pt[2 * b + 1] = Fraction(0)
        else:
            pt = list(rng.choice(points))
            for b in range(3):
                x, y = pt[2 * b], pt[2 * b + 1]
                move = rng.randrange(4)
                if move == 1:
                    x, y = x, -y
                elif move == 2:
                    x, y = y, x
                elif move == 3:
                    x, y = -y, x
                pt[2 * b], pt[2 * b + 1] = x, y
        points.append(tuple(pt))
    return points


def check_sec6(seed: int = 0, workers: int = 1) -> tuple[bool, str]:
    group = sec6_group()
    low, high = sec6_invariants()
    invariant = [verify_invariance(p, group) for p in low + high]
    if not all(invariant):
        bad = [i for i, good in enumerate(invariant) if not good]
        return False, f"not invariant: listed polynomials {bad}"
    if group.order != 9:
        return False, f"group order {group.order}"
    rng = random.Random(seed)
    points = _sec6_points(rng, 50)
    listed = [tuple(p(x) for p in low) for x in points]
    monos = monomials_up_to(6, 3)
    reynolds = [tuple(reynolds_values(group.orbit_points(x), monos)) for x in points]
    equal_pairs = norm_pairs = discrepancies = route_mismatch = 0
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            # the first three listed invariants are the squared norms of the planes
            norm_pairs += listed[i][:3] == listed[j][:3]
            eq = listed[i] == listed[j]
            if eq != (reynolds[i] == reynolds[j]):
                route_mismatch += 1
            if eq:
                equal_pairs += 1
                if not same_orbit(points[i], points[j], group):
                    discrepancies += 1
    # orbit images (in Q(w_12)^6) must keep every listed value
    moved = 0
    for x, vals in zip(points[:10], listed[:10]):
        for g in group.elements:
            if tuple(p(matvec(g, x)) for p in low) != vals:
                moved += 1
    ok = discrepancies == 0 and route_mismatch == 0 and moved == 0
    detail = (
        f"23/23 invariant, group order 9; {norm_pairs} pairs share the quadratic values,"
        f" {equal_pairs} all degree<=3 values,"
        f" {discrepancies} outside one orbit; route mismatches {route_mismatch}; orbit-image failures {moved}"
    )
    return ok, detail


def _theorem_pair(rng: random.Random, p: int) -> tuple[list[int], list[int]]:
    v = [rng.randint(-3, 3) for _ in range(p)]
    kind = rng.randrange(5)
    if kind == 0:
        w = [rng.randint(-3, 3) for _ in range(p)]
    elif kind == 1:
        s = rng.randrange(p)
        w = v[-s:] + v[:-s]
    elif kind == 2:
        w = [-x for x in v]
    elif kind == 3:
        w = [v[(-i) % p] for i in range(p)]
    else:
        w = v[:]
        rng.shuffle(w)
    return v, w


def check_theorem_pairs(seed: int = 0, workers: int = 1) -> tuple[bool, str]:
    rng = random.Random(seed)
    parts = []
    ok = True
    for p in (3, 5):
        spec = GroupSpec((p,))
        group = build_regular_representation(spec)
        discrepancies = same = 0
        for _ in range(200):
            v, w = _theorem_pair(rng, p)
            v, w = [Fraction(x) for x in v], [Fraction(x) for x in w]
            by_characters = not separated_by_degree(v, w, spec, 3).separated
            by_reynolds = not separated_by_degree(v, w, group, 3).separated
            orbit = same_orbit(v, w, spec)
            same += orbit
            if not (by_characters == by_reynolds == orbit):
                discrepancies += 1
        ok = ok and discrepancies == 0
        parts.append(f"C{p}: 200 pairs ({same} same orbit), {discrepancies} discrepancies")
    return ok, "; ".join(parts)


def random_product_one(rng: random.Random, spec: GroupSpec, max_length: int = 10) -> ZSequence:
    k = rng.randint(1, max_length)
    idx = [rng.randrange(spec.size) for _ in range(k - 1)]
    total = (0,) * spec.rank
    for i in idx:
        total = spec.add(total, spec.elements[i])
    idx.append(spec.index(spec.neg(total)))
    return ZSequence.from_indices(spec.size, idx)


def check_decompose(seed: int = 0, workers: int = 1) -> tuple[bool, str]:
    rng = random.Random(seed)
    failures = 0
    for text in ("C3", "C4", "C2xC2", "C3xC3"):
        spec = parse_group(text)
        allowed = {z.values for z in build_S(spec)}
        for _ in range(100):
            s = random_product_one(rng, spec)
            dec = decompose_into_S(s, spec)
            if dec.recombine() != s or any(z.values not in allowed for _, z in dec.terms):
                failures += 1
    return failures == 0, f"400 sequences over C3, C4, C2xC2, C3xC3; {failures} failures"


SMALL_GROUPS = (
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "C2xC3", "C7",
    "C8", "C2xC4", "C2xC2xC2", "C9", "C3xC3",
)


def lattice_identity_failures(spec: GroupSpec, fields=(FIELD_Q, FIELD_R, FIELD_C)) -> tuple[int, int]:
    """Compare the span of enumerated block elements with the computed kernel per stable subset."""
    elements = [b for b in enumerate_block_elements(spec, spec.size) if not b.is_zero()]
    verdicts: dict[frozenset, bool] = {}
    checked = failures = 0
    for field in fields:
        partition = orbit_partition(galois_group(field, spec), spec)
        for _mask, sub in masked_stable_subsets(partition, max_orbits=64):
            checked += 1
            if sub not in verdicts:
                indices = sorted(sub)
                kernel = kernel_basis(indices, spec)
                span = IntLattice(len(indices))
                good = True
                for b in elements:
                    if b.support <= sub:
                        r = restrict_to(b.values, indices)
                        good = good and r in kernel
                        span.add(r)
                good = good and all(v in span for v in kernel.basis) and span == kernel
                verdicts[sub] = good
            failures += not verdicts[sub]
    return checked, failures


def check_lattice_identity(seed: int = 0, workers: int = 1) -> tuple[bool, str]:
    total = bad = 0
    for text in SMALL_GROUPS:
        checked, failures = lattice_identity_failures(parse_group(text))
        total += checked
        bad += failures
    return bad == 0, f"{len(SMALL_GROUPS)} groups, {total} (field, subset) checks, {bad} failures"


def check_atoms(seed: int = 0, workers: int = 1) -> tuple[bool, str]:
    c3 = GroupSpec((3,))
    small = atoms(c3, 3)
    spec = GroupSpec((3, 3))
    found = atoms(spec)
    longest = max(a.length for a in found)
    top = {a.values for a in found if a.length == 5}
    b3 = parse_sequence("2*(1,0)+2*(0,1)+1*(1,1)", spec)
    orbit = {apply_permutation(b3, perm).values for perm in automorphisms(spec)}
    ok = len(small) == 4 and longest == 5 and top == orbit
    return ok, (
        f"C3: {len(small)} atoms; C3xC3: {len(found)} atoms up to length 9, max length {longest},"
        f" {len(top)} of length 5 vs automorphism orbit of b3 of size {len(orbit)}"
    )


CRITERIA: list[tuple[str, str, Callable[..., tuple[bool, str]]]] = [
    ("cp-q", "bound C_p over Q is 3 (2 for p=2)", check_cp_rationals),
    ("cp-r", "bound C_p over R is p, inverse pair fails below", check_cp_reals),
    ("c3xc3", "bound C3xC3: 3 over R, 4 over C", check_c3xc3),
    ("c4", "C4 witness separated exactly at degree 4", check_c4),
    ("cp-witness", "C_p witness v vs -v needs degree 3", check_cp_witness),
    ("s3", "S3 witness separated exactly at degree 4", check_s3),
    ("sec6", "C3xC3 on R^6: invariance and degree-3 separation", check_sec6),
    ("degree3", "C_p degree<=3 invariants separate orbits", check_theorem_pairs),
    ("decompose", "product-one sequences decompose into S", check_decompose),
    ("lattice", "enumerated block span equals kernel lattice", check_lattice_identity),
    ("atoms", "atom enumeration for C3 and C3xC3", check_atoms),
]

CRITERION_KEYS = tuple(k for k, _, _ in CRITERIA)


def run_criteria(only=None, seed: int = 0, workers: int = 1) -> list[CriterionResult]:
    wanted = set(only) if only else None
    if wanted:
        unknown = wanted - set(CRITERION_KEYS)
        if unknown:
            raise KeyError(f"unknown criteria {sorted(unknown)}; known: {', '.join(CRITERION_KEYS)}")
    out = []
    for key, title, fn in CRITERIA:
        if wanted and key not in wanted:
            continue
        t0 = time.perf_counter()
        try:
            passed, detail = fn(seed=seed, workers=workers)
        except Exception as exc:  # a crash is a failed criterion, not a crashed suite
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CriterionResult(key, title, passed, detail, time.perf_counter() - t0))
    return out

