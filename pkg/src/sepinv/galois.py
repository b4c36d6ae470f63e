"""The Galois group of K = F(w_e) over F as a unit subgroup, and its orbits on characters."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .abelian import GroupSpec

MAX_ORBITS = 20

RATIONALS = "Q"
REALS = "R"
ALL_ROOTS = "C"
EXPLICIT = "units"


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str
    units: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in (RATIONALS, REALS, ALL_ROOTS, EXPLICIT):
            raise FieldError(f"unknown field kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == EXPLICIT:
            return "units:" + ",".join(str(k) for k in self.units)
        return self.kind


def parse_field(text: str) -> FieldDescriptor:
    """``Q``, ``R``, ``C`` or ``units:k1,k2,...``."""
    t = text.strip()
    if t.upper() in (RATIONALS, REALS, ALL_ROOTS):
        return FieldDescriptor(t.upper())
    if t.lower().startswith("units:"):
        body = t.split(":", 1)[1]
        try:
            units = tuple(int(k) for k in body.split(",") if k.strip())
        except ValueError:
            raise FieldError(f"malformed unit list in {text!r}") from None
        return FieldDescriptor(EXPLICIT, units)
    raise FieldError(f"malformed field {text!r}; expected Q, R, C or units:k1,k2,...")


@dataclass(frozen=True)
class GaloisGroup:
    modulus: int
    units: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.units)


def _closure(gens, e: int) -> tuple[int, ...]:
    group = {1 % e}
    frontier = list(group)
    gens = [k % e for k in gens]
    while frontier:
        x = frontier.pop()
        for k in gens:
            y = (x * k) % e
            if y not in group:
                group.add(y)
                frontier.append(y)
    return tuple(sorted(group))


def galois_group(field: FieldDescriptor, spec: GroupSpec) -> GaloisGroup:
    e = spec.exponent
    if field.kind == RATIONALS:
        units = [k for k in range(e) if gcd(k, e) == 1]
    elif field.kind == REALS:
        units = [1, -1]
    elif field.kind == ALL_ROOTS:
        units = [1]
    else:
        for k in field.units:
            if gcd(k, e) != 1:
                raise FieldError(f"{k} is not a unit modulo exp(G) = {e}")
        units = list(field.units)
    return GaloisGroup(e, _closure(units, e))


@dataclass(frozen=True)
class OrbitPartition:
    orbits: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.orbits)

    def orbit_of(self, index: int) -> tuple[int, ...]:
        for orb in self.orbits:
            if index in orb:
                return orb
        raise KeyError(index)


def act(k: int, index: int, spec: GroupSpec) -> int:
    """Index of ``chi**k`` for the character at ``index``."""
    return spec.index(spec.scale(k, spec.elements[index]))


def orbit_partition(gamma: GaloisGroup, spec: GroupSpec) -> OrbitPartition:
    seen: set[int] = set()
    orbits = []
    for i in range(spec.size):
        if i in seen:
            continue
        orb = sorted({act(k, i, spec) for k in gamma.units})
        seen.update(orb)
        orbits.append(tuple(orb))
    return OrbitPartition(tuple(orbits))


def subset_for_mask(partition: OrbitPartition, mask: int) -> frozenset[int]:
    out: set[int] = set()
    for bit, orb in enumerate(partition.orbits):
        if mask >> bit & 1:
            out.update(orb)
    return frozenset(out)


def masked_stable_subsets(
    partition: OrbitPartition, max_orbits: int = MAX_ORBITS
) -> Iterator[tuple[int, frozenset[int]]]:
    """Yield ``(mask, I)`` for every union of orbits, masks ascending.

    Bit ``b`` of ``mask`` selects ``partition.orbits[b]``.
    """
    r = len(partition)
    if r > max_orbits:
        raise FieldError(
            f"{r} Galois orbits give 2^{r} stable subsets; the cap is {max_orbits} orbits"
        )
    return ((mask, subset_for_mask(partition, mask)) for mask in range(1 << r))


def stable_subsets(
    partition: OrbitPartition, max_orbits: int = MAX_ORBITS
) -> Iterator[frozenset[int]]:
    return (subset for _, subset in masked_stable_subsets(partition, max_orbits))
