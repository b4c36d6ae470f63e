"""Integer lattices: Hermite normal form, membership and product-one kernels.

Lattice bases are kept as rows in echelon form: every row has a positive
pivot, pivots move strictly right going down, and the entries above each
pivot are reduced into ``[0, pivot)``.  This is the column-style HNF of the
transposed generator matrix.
"""

from __future__ import annotations

from math import prod
from typing import Iterable, Sequence

from .abelian import GroupSpec

Vector = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``x*a + y*b = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


class IntLattice:
    """Z-span of integer vectors, maintained incrementally in Hermite normal form."""

    __slots__ = ("ambient_dim", "generators", "_rows")

    def __init__(self, ambient_dim: int, generators: Iterable[Sequence[int]] = ()) -> None:
        self.ambient_dim = ambient_dim
        self.generators: list[Vector] = []
        self._rows: dict[int, list[int]] = {}  # pivot column -> row
        for v in generators:
            self.add(v)

    def _check(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.ambient_dim:
            raise ValueError(
                f"vector of dimension {len(v)} in a lattice of dimension {self.ambient_dim}"
            )
        return [int(x) for x in v]

    def add(self, v: Sequence[int]) -> bool:
        """Add a generator; return True if the lattice grew."""
        w = self._check(v)
        self.generators.append(tuple(w))
        rows = self._rows
        grew = False
        for j in range(self.ambient_dim):
            b = w[j]
            if b == 0:
                continue
            row = rows.get(j)
            if row is None:
                if b < 0:
                    w = [-x for x in w]
                rows[j] = w
                self._reduce_above(j)
                return True
            a = row[j]
            if b % a == 0:
                q = b // a
                w = [x - q * y for x, y in zip(w, row)]
                continue
            g, x, y = xgcd(a, b)
            new_row = [x * r + y * s for r, s in zip(row, w)]
            ag, bg = a // g, b // g
            w = [ag * s - bg * r for r, s in zip(row, w)]
            rows[j] = new_row
            self._reduce_above(j)
            grew = True
        return grew

    def _reduce_above(self, j: int) -> None:
        rows = self._rows
        pivot_row = rows[j]
        p = pivot_row[j]
        # reduce the new row's tail, then every row above against it
        for k in sorted(c for c in rows if c > j):
            q = pivot_row[k] // rows[k][k]
            if q:
                pivot_row[:] = [x - q * y for x, y in zip(pivot_row, rows[k])]
        for c in rows:
            if c < j:
                r = rows[c]
                q = r[j] // p
                if q:
                    rows[c] = [x - q * y for x, y in zip(r, pivot_row)]
        # rows above may now have unreduced entries further right
        for c in sorted(c for c in rows if c < j):
            r = rows[c]
            for k in sorted(k for k in rows if k > j):
                q = r[k] // rows[k][k]
                if q:
                    r = [x - q * y for x, y in zip(r, rows[k])]
            rows[c] = r

    @property
    def hnf(self) -> list[Vector]:
        return [tuple(self._rows[j]) for j in sorted(self._rows)]

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def index(self) -> int | None:
        """``[Z^n : L]`` for a full-rank lattice, else None."""
        if self.rank < self.ambient_dim:
            return None
        return prod(self._rows[j][j] for j in self._rows)

    def __contains__(self, v: Sequence[int]) -> bool:
        w = self._check(v)
        for j in range(self.ambient_dim):
            b = w[j]
            if b == 0:
                continue
            row = self._rows.get(j)
            if row is None or b % row[j]:
                return False
            q = b // row[j]
            w = [x - q * y for x, y in zip(w, row)]
        return True

    def contains(self, v: Sequence[int]) -> bool:
        return v in self

    def contains_lattice(self, other: IntLattice) -> bool:
        return all(r in self for r in other.hnf)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntLattice)
            and self.ambient_dim == other.ambient_dim
            and self.hnf == other.hnf
        )

    def __repr__(self) -> str:
        return f"IntLattice(dim={self.ambient_dim}, hnf={self.hnf})"


def hermite_normal_form(generators: Iterable[Sequence[int]], ambient_dim: int | None = None) -> IntLattice:
    gens = [tuple(int(x) for x in v) for v in generators]
    if ambient_dim is None:
        if not gens:
            raise ValueError("ambient dimension required for an empty generator list")
        ambient_dim = len(gens[0])
    return IntLattice(ambient_dim, gens)


def contains(lattice: IntLattice, v: Sequence[int]) -> bool:
    return lattice.contains(v)


def left_kernel(matrix: Sequence[Sequence[int]]) -> list[Vector]:
    """Integer basis of ``{u : u @ matrix = 0}`` by row reduction with a unimodular transform."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    # augmented rows [A_i | e_i]
    rows = [list(matrix[i]) + [1 if k == i else 0 for k in range(m)] for i in range(m)]
    top = 0
    for col in range(n):
        # gcd-eliminate column col among rows[top:]
        while True:
            nz = [i for i in range(top, m) if rows[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][col]))
            rows[top], rows[piv] = rows[piv], rows[top]
            done = True
            for i in range(top + 1, m):
                if rows[i][col]:
                    q = rows[i][col] // rows[top][col]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[top])]
                    if rows[i][col]:
                        done = False
            if done:
                top += 1
                break
        if top == m:
            break
    return [tuple(r[n:]) for r in rows[top:]]


class KernelLattice(IntLattice):
    """``A_I``: integer functions on ``I`` whose weighted character sum vanishes.

    Coordinates follow ``indices`` (the sorted members of I).
    """

    __slots__ = ("indices",)

    def __init__(self, indices: Sequence[int], generators: Iterable[Sequence[int]] = ()) -> None:
        self.indices = tuple(indices)
        super().__init__(len(self.indices), generators)

    @property
    def basis(self) -> list[Vector]:
        return self.hnf

    def embed(self, v: Sequence[int], size: int) -> Vector:
        full = [0] * size
        for i, x in zip(self.indices, v):
            full[i] = x
        return tuple(full)


def kernel_basis(subset: Iterable[int], spec: GroupSpec) -> KernelLattice:
    """Basis of the kernel of ``Z^I -> G^, s -> sum s(chi) chi``."""
    indices = sorted(set(subset))
    if not indices:
        return KernelLattice(())
    # rows: characters in I, then the relations n_j e_j of the target group
    matrix = [list(spec.elements[i]) for i in indices]
    for j, n in enumerate(spec.orders):
        matrix.append([n if k == j else 0 for k in range(spec.rank)])
    k = len(indices)
    vectors = [u[:k] for u in left_kernel(matrix)]
    return KernelLattice(indices, vectors)


def restrict_to(v: Sequence[int], indices: Sequence[int]) -> Vector:
    return tuple(v[i] for i in indices)
