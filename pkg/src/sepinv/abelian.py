"""Finite abelian groups Z/n_1 x ... x Z/n_k, their elements and characters.

Characters are identified with residue vectors via the self-duality of
``prod Z/n_i``: the character ``chi`` sends ``g`` to ``w_e ** t`` with
``e = exp(G)`` and ``t = sum (e / n_i) * chi_i * g_i``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd, lcm, prod
from typing import Iterator

from .cyclotomic import Cyclotomic

GROUP_ORDER_CAP = 10**4

Residues = tuple[int, ...]


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        if not self.orders:
            raise GroupError("a group needs at least one cyclic factor")
        if any(n < 1 for n in self.orders):
            raise GroupError(f"cyclic factor orders must be >= 1: {self.orders}")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        return reduce(lcm, self.orders, 1)

    def __str__(self) -> str:
        return "x".join(f"C{n}" for n in self.orders)

    def check_cap(self, cap: int = GROUP_ORDER_CAP) -> None:
        if self.size > cap:
            raise GroupError(f"|G| = {self.size} exceeds the configured cap {cap}")

    def reduce(self, residues) -> Residues:
        residues = tuple(residues)
        if len(residues) != self.rank:
            raise GroupError(
                f"expected {self.rank} residues for {self}, got {len(residues)}"
            )
        return tuple(r % n for r, n in zip(residues, self.orders))

    @cached_property
    def elements(self) -> tuple[Residues, ...]:
        """All elements in lexicographic residue order; index = position."""
        self.check_cap()
        return tuple(itertools.product(*(range(n) for n in self.orders)))

    @cached_property
    def _index(self) -> dict[Residues, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def index(self, residues) -> int:
        return self._index[self.reduce(residues)]

    def add(self, a: Residues, b: Residues) -> Residues:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a: Residues) -> Residues:
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def scale(self, k: int, a: Residues) -> Residues:
        return tuple((k * x) % n for x, n in zip(a, self.orders))

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        """``add_table[i][j]`` is the index of ``elements[i] + elements[j]``."""
        els = self.elements
        return tuple(tuple(self.index(self.add(a, b)) for b in els) for a in els)

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.index(self.neg(a)) for a in self.elements)


_SPEC_RE = re.compile(r"^\s*c\s*(\d+)\s*$", re.IGNORECASE)


def parse_group(text: str) -> GroupSpec:
    """Parse ``C3xC3``, ``C5``, ``c2xc4`` ..."""
    parts = re.split(r"[xX×]", text.strip())
    orders = []
    for part in parts:
        m = _SPEC_RE.match(part)
        if not m:
            raise GroupError(f"malformed group spec {text!r}; expected e.g. C3xC3")
        orders.append(int(m.group(1)))
    return GroupSpec(tuple(orders))


@dataclass(frozen=True)
class GroupElement:
    residues: Residues


@dataclass(frozen=True)
class Character:
    residues: Residues


def _residues(x) -> Residues:
    if isinstance(x, (GroupElement, Character)):
        return x.residues
    if isinstance(x, int):
        return (x,)
    return tuple(x)


def pairing_exponent(chi, g, spec: GroupSpec) -> int:
    """``t`` with ``chi(g) = w_e**t``, ``e = exp(G)``."""
    chi = _residues(chi)
    g = _residues(g)
    if len(chi) != spec.rank or len(g) != spec.rank:
        raise GroupError(f"dimension mismatch with group {spec}")
    e = spec.exponent
    return sum((e // n) * c * x for c, x, n in zip(chi, g, spec.orders)) % e


def pairing(chi, g, spec: GroupSpec) -> Cyclotomic:
    return Cyclotomic.root(spec.exponent, pairing_exponent(chi, g, spec))


def character_order(chi, spec: GroupSpec) -> int:
    chi = spec.reduce(_residues(chi))
    return reduce(lcm, (n // gcd(n, c) for c, n in zip(chi, spec.orders)), 1)


def enumerate_characters(spec: GroupSpec, cap: int = GROUP_ORDER_CAP) -> list[Character]:
    spec.check_cap(cap)
    return [Character(r) for r in spec.elements]


def iter_elements(spec: GroupSpec) -> Iterator[GroupElement]:
    return (GroupElement(r) for r in spec.elements)


def format_residues(r: Residues) -> str:
    return "(" + ",".join(str(x) for x in r) + ")"
