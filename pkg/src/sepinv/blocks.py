"""Sequences over the character group and the block (product-one) monoid.

A :class:`ZSequence` is an integer-valued function on the character group,
stored densely by character index.  Nonnegative ones are sequences; they
double as exponent vectors of monomials in the variables ``x_chi``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Sequence

from .abelian import GroupSpec, character_order, format_residues

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ZSequence:
    values: tuple[int, ...]

    @classmethod
    def zero(cls, size: int) -> ZSequence:
        return cls((0,) * size)

    @classmethod
    def delta(cls, size: int, index: int, mult: int = 1) -> ZSequence:
        v = [0] * size
        v[index] = mult
        return cls(tuple(v))

    @classmethod
    def from_indices(cls, size: int, indices: Iterable[int]) -> ZSequence:
        v = [0] * size
        for i in indices:
            v[i] += 1
        return cls(tuple(v))

    @classmethod
    def from_sparse(cls, size: int, data: dict) -> ZSequence:
        v = [0] * size
        for k, x in data.items():
            v[int(k)] = int(x)
        return cls(tuple(v))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def length(self) -> int:
        """``sum |s(chi)|``."""
        return sum(abs(x) for x in self.values)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.values) if x)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def __add__(self, other: ZSequence) -> ZSequence:
        return ZSequence(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: ZSequence) -> ZSequence:
        return ZSequence(tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> ZSequence:
        return ZSequence(tuple(-a for a in self.values))

    def __rmul__(self, k: int) -> ZSequence:
        return ZSequence(tuple(k * a for a in self.values))

    def to_sparse(self) -> dict[str, int]:
        return {str(i): x for i, x in enumerate(self.values) if x}

    def text(self, spec: GroupSpec) -> str:
        """Report form, e.g. ``2*(1,0)+2*(0,1)+1*(1,1)``."""
        terms = [
            f"{x}*{format_residues(spec.elements[i])}"
            for i, x in enumerate(self.values)
            if x
        ]
        return "+".join(terms).replace("+-", "-") if terms else "0"


_TERM_RE = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*\(([^)]*)\)")


def parse_sequence(text: str, spec: GroupSpec) -> ZSequence:
    """Inverse of :meth:`ZSequence.text`."""
    body = text.replace(" ", "")
    v = [0] * spec.size
    if body == "0":
        return ZSequence(tuple(v))
    pos = 0
    for m in _TERM_RE.finditer(body):
        if m.start() != pos:
            raise ValueError(f"malformed sequence {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        mult = int(m.group(2)) if m.group(2) else 1
        residues = [int(r) for r in m.group(3).split(",")]
        if len(residues) != spec.rank or any(not 0 <= r < n for r, n in zip(residues, spec.orders)):
            raise ValueError(f"{m.group(3)!r} is not an element of {spec}")
        v[spec.index(residues)] += sign * mult
    if pos != len(body) or pos == 0:
        raise ValueError(f"malformed sequence {text!r}")
    return ZSequence(tuple(v))


def weighted_sum(values: Sequence[int], spec: GroupSpec) -> tuple[int, ...]:
    """``sum s(chi) * chi`` in additive notation."""
    total = [0] * spec.rank
    for x, chi in zip(values, spec.elements):
        if x:
            for j, c in enumerate(chi):
                total[j] += x * c
    return tuple(t % n for t, n in zip(total, spec.orders))


def is_product_one(s, spec: GroupSpec) -> bool:
    values = s.values if isinstance(s, ZSequence) else tuple(s)
    if len(values) != spec.size:
        raise ValueError(f"sequence has {len(values)} entries, |G| = {spec.size}")
    return not any(weighted_sum(values, spec))


def count_sequences(n_letters: int, max_length: int) -> int:
    """Number of nonnegative sequences over ``n_letters`` with length <= max_length."""
    return comb(n_letters + max_length, max_length)


def _zero_sum_tuples(
    spec: GroupSpec, k: int, letters: Sequence[int]
) -> Iterator[tuple[int, ...]]:
    """Sorted index tuples of length ``k`` over ``letters`` summing to zero, lex order.

    The last entry is forced to be the negative of the partial sum.
    """
    if k == 0:
        yield ()
        return
    add = spec.add_table
    neg = spec.neg_table
    allowed = set(letters)
    zero = 0
    letters = sorted(letters)

    def rec(start: int, depth: int, partial: int, prefix: tuple[int, ...]):
        if depth == k - 1:
            last = neg[partial]
            if last in allowed and (not prefix or last >= prefix[-1]):
                yield prefix + (last,)
            return
        for pos in range(start, len(letters)):
            i = letters[pos]
            yield from rec(pos, depth + 1, add[partial][i], prefix + (i,))

    yield from rec(0, 0, zero, ())


def enumerate_block_elements(
    spec: GroupSpec,
    max_length: int,
    budget: int = DEFAULT_BUDGET,
    support: Iterable[int] | None = None,
) -> list[ZSequence]:
    """All product-one sequences with length <= max_length, shortest first.

    Ties are broken lexicographically on the sorted tuple of character
    indices.  ``support`` restricts the letters used.
    """
    letters = sorted(set(range(spec.size) if support is None else support))
    needed = count_sequences(len(letters), max_length)
    if needed > budget:
        raise BudgetExceeded(
            f"{needed} candidate sequences of length <= {max_length} over "
            f"{len(letters)} letters exceed the budget {budget}"
        )
    out = []
    for k in range(max_length + 1):
        for tup in _zero_sum_tuples(spec, k, letters):
            out.append(ZSequence.from_indices(spec.size, tup))
    return out


def has_proper_zero_sum_subsequence(s: ZSequence, spec: GroupSpec) -> bool:
    support = [i for i, x in enumerate(s.values) if x]
    counts = [s.values[i] for i in support]
    full = tuple(counts)
    add = spec.add_table
    for sub in itertools.product(*(range(c + 1) for c in counts)):
        if not any(sub) or sub == full:
            continue
        total = 0
        for i, c in zip(support, sub):
            for _ in range(c):
                total = add[total][i]
        if total == 0:
            return True
    return False


def is_atom(s: ZSequence, spec: GroupSpec) -> bool:
    return (
        not s.is_zero()
        and s.is_nonnegative()
        and is_product_one(s, spec)
        and not has_proper_zero_sum_subsequence(s, spec)
    )


def atoms(
    spec: GroupSpec, max_length: int | None = None, budget: int = DEFAULT_BUDGET
) -> list[ZSequence]:
    """Irreducible block elements of length <= max_length (default |G|)."""
    if max_length is None:
        max_length = spec.size
    return [
        b
        for b in enumerate_block_elements(spec, max_length, budget)
        if not b.is_zero() and not has_proper_zero_sum_subsequence(b, spec)
    ]


def restrict(elements: Iterable[ZSequence], subset: Iterable[int]) -> list[ZSequence]:
    """Elements supported inside ``subset``, order preserved."""
    keep = frozenset(subset)
    return [m for m in elements if m.support <= keep]


def build_S(spec: GroupSpec, include_unit_triples: bool = False) -> list[ZSequence]:
    """The length-<=3 generating set of the product-one lattice.

    Triples ``d_g + d_h + d_(gh)^-1`` range over nontrivial ``g, h`` with
    ``gh != 1``.  ``include_unit_triples=True`` also keeps the ``gh = 1``
    triples, which contain ``d_1`` and do not change the Z-span.
    """
    size = spec.size
    add, neg = spec.add_table, spec.neg_table
    out: dict[tuple[int, ...], ZSequence] = {}

    def put(indices):
        z = ZSequence.from_indices(size, indices)
        out.setdefault(z.values, z)

    put([0])
    for g in range(1, size):
        put([g, neg[g]])
    for g in range(1, size):
        for h in range(1, size):
            third = neg[add[g][h]]
            if third == 0 and not include_unit_triples:
                continue
            put([g, h, third])
    return sorted(out.values(), key=lambda z: (z.length, sorted_indices(z)))


def sorted_indices(z: ZSequence) -> tuple[int, ...]:
    return tuple(i for i, x in enumerate(z.values) for _ in range(x))


def order_multiple(spec: GroupSpec, index: int) -> ZSequence:
    """``ord(chi) * d_chi``, always product-one."""
    return ZSequence.delta(spec.size, index, character_order(spec.elements[index], spec))


def automorphisms(spec: GroupSpec) -> list[tuple[int, ...]]:
    """Automorphisms of the group as index permutations.

    Brute force over images of the standard generators; fine for small groups.
    """
    out = []
    for images in itertools.product(spec.elements, repeat=spec.rank):
        if any(
            spec.scale(n, img) != (0,) * spec.rank
            for n, img in zip(spec.orders, images)
        ):
            continue
        perm = []
        for g in spec.elements:
            acc = (0,) * spec.rank
            for coef, img in zip(g, images):
                acc = spec.add(acc, spec.scale(coef, img))
            perm.append(spec.index(acc))
        if len(set(perm)) == spec.size:
            out.append(tuple(perm))
    return out


def apply_permutation(s: ZSequence, perm: Sequence[int]) -> ZSequence:
    v = [0] * len(s.values)
    for i, x in enumerate(s.values):
        v[perm[i]] += x
    return ZSequence(tuple(v))
