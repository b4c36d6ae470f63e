"""Certified upper bounds on the separating Noether number of a finite abelian group.

For a degree ``d`` let ``M`` be the product-one sequences of length <= d.  The
bound ``d`` is certified when, for every Galois-stable set ``I`` of
characters, the Z-span of the elements of ``M`` supported in ``I`` contains
every product-one integer function supported in ``I``.  The latter lattice
is computed directly as a kernel, so no infinite enumeration is needed.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Optional

from .abelian import GroupSpec, character_order
from .blocks import (
    DEFAULT_BUDGET,
    ZSequence,
    build_S,
    enumerate_block_elements,
    is_product_one,
)
from .galois import (
    MAX_ORBITS,
    FieldDescriptor,
    galois_group,
    masked_stable_subsets,
    orbit_partition,
)
from .lattice import IntLattice, KernelLattice, kernel_basis, restrict_to


@dataclass
class SubsetEvidence:
    orbit_mask: int
    subset: tuple[int, ...]
    kernel_vectors: list[tuple[int, ...]]
    hnf: list[tuple[int, ...]]
    contained: bool
    witness: Optional[tuple[int, ...]] = None

    def to_json(self) -> dict:
        out = {
            "orbit_mask": self.orbit_mask,
            "subset": list(self.subset),
            "kernel_vectors": [list(v) for v in self.kernel_vectors],
            "hnf": [list(v) for v in self.hnf],
            "contained": self.contained,
        }
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@dataclass
class SeparationCertificate:
    group: GroupSpec
    field: FieldDescriptor
    degree: int
    orbits: tuple[tuple[int, ...], ...]
    subsets: list[SubsetEvidence] = dc_field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(s.contained for s in self.subsets)

    @property
    def failures(self) -> list[SubsetEvidence]:
        return [s for s in self.subsets if not s.contained]

    @property
    def first_failure(self) -> Optional[SubsetEvidence]:
        fails = self.failures
        return min(fails, key=lambda s: s.orbit_mask) if fails else None

    def to_json(self) -> dict:
        return {
            "group": str(self.group),
            "field": str(self.field),
            "degree": self.degree,
            "orbits": [list(o) for o in self.orbits],
            "subsets": [s.to_json() for s in self.subsets],
            "valid": self.valid,
        }


@lru_cache(maxsize=32)
def _block_elements(spec: GroupSpec, d: int, budget: int) -> tuple[ZSequence, ...]:
    return tuple(enumerate_block_elements(spec, d, budget))


def check_subset(
    spec: GroupSpec, d: int, mask: int, subset, budget: int = DEFAULT_BUDGET
) -> SubsetEvidence:
    """Condition (*) for a single stable subset."""
    indices = tuple(sorted(subset))
    keep = frozenset(indices)
    kernel = kernel_basis(indices, spec)
    span = IntLattice(len(indices))
    for m in _block_elements(spec, d, budget):
        if m.support <= keep:
            span.add(restrict_to(m.values, indices))
    missing = [v for v in kernel.basis if v not in span]
    witness = None
    if missing:
        # prefer the canonical witness ord(chi) * d_chi when it is missing
        for pos, i in enumerate(indices):
            e = [0] * len(indices)
            e[pos] = character_order(spec.elements[i], spec)
            if tuple(e) not in span:
                witness = kernel.embed(e, spec.size)
                break
        if witness is None:
            witness = kernel.embed(missing[0], spec.size)
    return SubsetEvidence(
        orbit_mask=mask,
        subset=indices,
        kernel_vectors=[kernel.embed(v, spec.size) for v in kernel.basis],
        hnf=[kernel.embed(v, spec.size) for v in span.hnf],
        contained=not missing,
        witness=witness,
    )


def _check_subset_task(args) -> SubsetEvidence:
    return check_subset(*args)


def check_condition_star(
    spec: GroupSpec,
    field: FieldDescriptor,
    d: int,
    *,
    budget: int = DEFAULT_BUDGET,
    max_orbits: int = MAX_ORBITS,
    workers: int = 1,
) -> SeparationCertificate:
    """Check every Galois-stable subset at degree ``d``.

    The returned certificate carries evidence for all subsets; when it is
    invalid, :attr:`SeparationCertificate.first_failure` is the lex-least
    failing subset (smallest orbit bitmask) with a witness vector.
    """
    gamma = galois_group(field, spec)
    partition = orbit_partition(gamma, spec)
    subsets = list(masked_stable_subsets(partition, max_orbits))
    _block_elements(spec, d, budget)  # fail fast on budget
    tasks = [(spec, d, mask, sub, budget) for mask, sub in subsets]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            evidence = list(pool.map(_check_subset_task, tasks, chunksize=8))
    else:
        evidence = [_check_subset_task(t) for t in tasks]
    evidence.sort(key=lambda e: e.orbit_mask)
    return SeparationCertificate(spec, field, d, partition.orbits, evidence)


@dataclass
class DegreeSearch:
    degree: int
    certificate: SeparationCertificate
    trail: list[dict]


def minimal_certified_degree(
    spec: GroupSpec,
    field: FieldDescriptor,
    *,
    max_degree: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    max_orbits: int = MAX_ORBITS,
    workers: int = 1,
) -> DegreeSearch:
    """Smallest ``d`` in ``[1, max_degree]`` passing condition (*).

    ``max_degree`` defaults to |G|, which always passes.  When no degree up to
    ``max_degree`` passes, ``degree`` is 0 and ``certificate`` is the last
    failing one.
    """
    top = spec.size if max_degree is None else min(max_degree, spec.size)
    trail = []
    cert = None
    for d in range(1, top + 1):
        cert = check_condition_star(
            spec, field, d, budget=budget, max_orbits=max_orbits, workers=workers
        )
        first = cert.first_failure
        trail.append(
            {
                "degree": d,
                "valid": cert.valid,
                "failing_subsets": len(cert.failures),
                "first_failing_mask": None if first is None else first.orbit_mask,
                "first_failing_subset": None if first is None else list(first.subset),
                "witness": None if first is None else list(first.witness),
            }
        )
        if cert.valid:
            return DegreeSearch(d, cert, trail)
    return DegreeSearch(0, cert, trail)


def subgroup_size(indices, spec: GroupSpec) -> int:
    """Order of the subgroup generated by the given characters."""
    add = spec.add_table
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for i in indices:
            y = add[x][i]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen)


def recheck_certificate(data: dict, spec: GroupSpec) -> bool:
    """Re-verify a certificate JSON from its recorded vectors alone.

    Per subset: the kernel vectors are product-one, have index equal to the
    order of the subgroup generated by the subset (so they span the whole
    kernel), and each lies in the span of the recorded HNF rows, which must
    themselves be product-one.
    """
    ok = True
    for entry in data["subsets"]:
        indices = entry["subset"]
        kern = [tuple(v) for v in entry["kernel_vectors"]]
        rows = [tuple(v) for v in entry["hnf"]]
        if not all(is_product_one(v, spec) for v in kern + rows):
            return False
        k = KernelLattice(indices, [restrict_to(v, indices) for v in kern])
        if indices and k.index() != subgroup_size(indices, spec):
            return False
        span = IntLattice(len(indices), [restrict_to(v, indices) for v in rows])
        contained = all(restrict_to(v, indices) in span for v in kern)
        if contained != entry["contained"]:
            return False
        ok = ok and contained
    return ok == data["valid"]


# --- constructive decomposition into the length-<=3 generators -------------


@dataclass
class SDecomposition:
    target: ZSequence
    terms: list[tuple[int, ZSequence]]

    def recombine(self) -> ZSequence:
        total = ZSequence.zero(len(self.target))
        for c, z in self.terms:
            total = total + c * z
        return total

    def to_json(self, spec: GroupSpec) -> dict:
        return {
            "target": self.target.text(spec),
            "terms": [{"coefficient": c, "element": z.text(spec)} for c, z in self.terms],
        }


class NotProductOne(ValueError):
    pass


def _inverse_pair(cur, neg):
    for g, x in enumerate(cur):
        if x > 0 and g:
            h = neg[g]
            if cur[h] >= (2 if h == g else 1):
                return g, h
    return None


def decompose_into_S(s: ZSequence, spec: GroupSpec) -> SDecomposition:
    """Write a product-one integer function as a Z-combination of S.

    Follows the induction on length: peel off the identity, close length-2
    pairs, otherwise subtract a triple built from two positive entries.
    Each step lowers the length by at least one.
    """
    if not is_product_one(s, spec):
        raise NotProductOne(f"{s.text(spec)} is not product-one")
    add, neg = spec.add_table, spec.neg_table
    size = spec.size
    acc: dict[tuple[int, ...], int] = {}
    order: list[ZSequence] = []

    def emit(coef: int, indices) -> None:
        z = ZSequence.from_indices(size, indices)
        if z.values not in acc:
            acc[z.values] = 0
            order.append(z)
        acc[z.values] += coef

    cur = list(s.values)
    sign = 1  # s = (emitted terms) + sign * cur
    steps = 0
    while any(cur):
        steps += 1
        if cur[0]:
            if cur[0] < 0:
                cur = [-x for x in cur]
                sign = -sign
            cur[0] -= 1
            emit(sign, [0])
            continue
        length = sum(abs(x) for x in cur)
        if length == 2:
            if min(cur) < 0:
                cur = [-x for x in cur]
                sign = -sign
            idx = [i for i, x in enumerate(cur) for _ in range(x)]
            emit(sign, idx)
            cur = [0] * size
            continue
        pair = _inverse_pair(cur, neg)
        if pair is None:
            pair = _inverse_pair([-x for x in cur], neg)
            if pair is not None:
                cur = [-x for x in cur]
                sign = -sign
        if pair is not None:
            g, h = pair
            cur[g] -= 1
            cur[h] -= 1
            emit(sign, [g, h])
            continue
        if sum(x for x in cur if x > 0) < 2:
            cur = [-x for x in cur]
            sign = -sign
        g = next(i for i, x in enumerate(cur) if x > 0)
        cur[g] -= 1
        h = next(i for i, x in enumerate(cur) if x > 0)
        cur[h] -= 1
        third = neg[add[g][h]]
        cur[third] -= 1
        emit(sign, [g, h, third])
    assert steps <= s.length
    terms = [(acc[z.values], z) for z in order if acc[z.values]]
    dec = SDecomposition(s, terms)
    assert dec.recombine() == s
    return dec


def build_T(spec: GroupSpec) -> list[tuple[int, ...]]:
    """Exponent vectors of the monomials ``x^s``, ``s`` in S (degree <= 3)."""
    return [z.values for z in build_S(spec)]
