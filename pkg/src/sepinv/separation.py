"""Orbit separation: Fourier coordinates, monomial invariants, matrix groups and Reynolds sums.

Points of the regular representation ``F(G, F)`` are lists of rationals
indexed by group elements (in the lexicographic order of
:attr:`GroupSpec.elements`).  Their character-basis coordinates are
``c_chi = sum_g chi(g) v_g`` in ``Q(w_e)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .abelian import GroupSpec, character_order, pairing_exponent
from .blocks import DEFAULT_BUDGET, ZSequence, build_S, enumerate_block_elements
from .cyclotomic import Cyclotomic
from .galois import FieldDescriptor, GaloisGroup, galois_group, orbit_partition
from .polynomial import ExactPolynomial, monomials_up_to

MATRIX_GROUP_CAP = 10**4
REYNOLDS_DEGREE_CAP = 6

Matrix = tuple[tuple, ...]


class SeparationError(ValueError):
    pass


class NotInTorus(SeparationError):
    pass


# --- Fourier transform on the regular representation -------------------------


def to_character_basis(v: Sequence, spec: GroupSpec) -> list[Cyclotomic]:
    if len(v) != spec.size:
        raise SeparationError(f"point has {len(v)} coordinates, |G| = {spec.size}")
    e = spec.exponent
    out = []
    for chi in spec.elements:
        acc = [Fraction(0)] * e
        for g, x in zip(spec.elements, v):
            if x:
                acc[pairing_exponent(chi, g, spec)] += Fraction(x)
        out.append(Cyclotomic(e, acc))
    return out


def from_character_basis(c: Sequence[Cyclotomic], spec: GroupSpec) -> list:
    """Inverse transform ``v_g = (1/|G|) sum_chi chi(g)^-1 c_chi``.

    Coordinates come back as Fractions when rational.
    """
    e = spec.exponent
    out = []
    for g in spec.elements:
        total = Cyclotomic.rational(e, 0)
        for chi, x in zip(spec.elements, c):
            total = total + x * Cyclotomic.root(e, -pairing_exponent(chi, g, spec))
        total = total / spec.size
        out.append(total.to_fraction() if total.is_rational() else total)
    return out


def verify_galois_compatibility(
    c: Sequence[Cyclotomic], gamma: GaloisGroup, spec: GroupSpec
) -> bool:
    """``c_{chi^k} = sigma_k(c_chi)`` for every unit ``k`` of the Galois group."""
    for k in gamma.units:
        for i, chi in enumerate(spec.elements):
            j = spec.index(spec.scale(k, chi))
            if c[j] != c[i].galois(k):
                return False
    return True


def eval_monomial(b, c: Sequence[Cyclotomic]):
    values = b.values if isinstance(b, ZSequence) else tuple(b)
    if any(x < 0 for x in values):
        raise SeparationError("monomial exponents must be nonnegative")
    result = Cyclotomic.rational(c[0].order, 1) if c else Fraction(1)
    for x, k in zip(c, values):
        if k:
            result = result * x**k
    return result


def nonzero_support(c: Sequence[Cyclotomic]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(c) if x)


# --- the regular action ---------------------------------------------------------


def act_regular(h, v: Sequence, spec: GroupSpec) -> list:
    """``h . v`` with ``h . d_g = d_{hg}``, i.e. ``(h . v)_g = v_{g - h}``."""
    hres = spec.elements[h] if isinstance(h, int) else spec.reduce(h)
    neg_h = spec.neg(hres)
    return [v[spec.index(spec.add(g, neg_h))] for g in spec.elements]


def act_diagonal(h, c: Sequence[Cyclotomic], spec: GroupSpec) -> list[Cyclotomic]:
    """Action in character coordinates: ``c_chi -> chi(h) c_chi``."""
    hres = spec.elements[h] if isinstance(h, int) else spec.reduce(h)
    e = spec.exponent
    return [x * Cyclotomic.root(e, pairing_exponent(chi, hres, spec)) for chi, x in zip(spec.elements, c)]


def regular_orbit(v: Sequence, spec: GroupSpec) -> list[tuple]:
    return [tuple(act_regular(h, v, spec)) for h in range(spec.size)]


# --- matrix groups ------------------------------------------------------------------


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b[0])
    return tuple(
        tuple(_dot(row, [b[k][j] for k in range(len(b))]) for j in range(n)) for row in a
    )


def _dot(xs, ys):
    total = Fraction(0)
    for x, y in zip(xs, ys):
        if x and y:
            total = total + x * y
    return _canon(total)


def _canon(x):
    """Collapse rational cyclotomics to Fractions so equal matrices hash equally."""
    if isinstance(x, Cyclotomic) and x.is_rational():
        return x.to_fraction()
    if isinstance(x, int):
        return Fraction(x)
    return x


def as_matrix(rows) -> Matrix:
    return tuple(tuple(_canon(x) for x in row) for row in rows)


def matvec(a: Matrix, v: Sequence) -> tuple:
    return tuple(_dot(row, v) for row in a)


class MatrixGroup:
    """Finite group generated by exact square matrices, closed by breadth-first products."""

    def __init__(self, generators: Sequence, cap: int = MATRIX_GROUP_CAP, name: str = "") -> None:
        gens = [as_matrix(g) for g in generators]
        if not gens:
            raise SeparationError("a matrix group needs at least one generator")
        self.dimension = len(gens[0])
        if any(len(g) != self.dimension or any(len(r) != self.dimension for r in g) for g in gens):
            raise SeparationError("generators must be square matrices of one size")
        self.generators = gens
        self.cap = cap
        self.name = name
        self._elements: Optional[list[Matrix]] = None

    @property
    def identity(self) -> Matrix:
        n = self.dimension
        return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))

    @property
    def elements(self) -> list[Matrix]:
        if self._elements is None:
            seen = {self.identity}
            order = [self.identity]
            queue = deque(order)
            while queue:
                x = queue.popleft()
                for g in self.generators:
                    y = _matmul(g, x)
                    if y not in seen:
                        seen.add(y)
                        order.append(y)
                        queue.append(y)
                        if len(order) > self.cap:
                            raise SeparationError(
                                f"matrix group closure exceeds cap {self.cap}"
                            )
            self._elements = order
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def orbit(self, v: Sequence) -> list[tuple]:
        seen = {}
        for g in self.elements:
            w = matvec(g, v)
            seen.setdefault(w, None)
        return list(seen)

    def orbit_points(self, v: Sequence) -> list[tuple]:
        """``g . v`` for every element, with repetition (for Reynolds sums)."""
        return [matvec(g, v) for g in self.elements]


def build_regular_representation(spec: GroupSpec, field: FieldDescriptor | None = None) -> MatrixGroup:
    """Permutation matrices of left translation for the standard generators of G."""
    spec.check_cap()
    n = spec.size
    gens = []
    for i in range(spec.rank):
        h = tuple(1 if k == i else 0 for k in range(spec.rank))
        m = [[0] * n for _ in range(n)]
        for g_index, g in enumerate(spec.elements):
            # (h.v)_g = v_{g - h}
            m[g_index][spec.index(spec.add(g, spec.neg(h)))] = 1
        gens.append(m)
    return MatrixGroup(gens, name=f"regular {spec}")


# --- orbit comparison -------------------------------------------------------------


def _canon_point(v: Sequence) -> tuple:
    return tuple(_canon(x) for x in v)


def same_orbit(v: Sequence, w: Sequence, group: Union[GroupSpec, MatrixGroup]) -> bool:
    v, w = _canon_point(v), _canon_point(w)
    if isinstance(group, GroupSpec):
        group.check_cap()
        return w in set(map(_canon_point, regular_orbit(v, group)))
    return w in set(group.orbit(v))


def reynolds_orbit_sum(
    m: Sequence[int], group: MatrixGroup, degree_cap: int = REYNOLDS_DEGREE_CAP
) -> ExactPolynomial:
    """``sum_g x^m o g`` without the ``1/|G|`` factor."""
    if sum(m) > degree_cap:
        raise SeparationError(f"monomial degree {sum(m)} exceeds cap {degree_cap}")
    mono = ExactPolynomial.monomial(tuple(m))
    total = ExactPolynomial(group.dimension)
    for g in group.elements:
        total = total + mono.compose_linear(g)
    return total


def verify_invariance(p: ExactPolynomial, group: MatrixGroup) -> bool:
    return all(p.compose_linear(g) == p for g in group.generators)


def _monomial_value(exp: Sequence[int], point: Sequence):
    out = Fraction(1)
    for x, k in zip(point, exp):
        if k:
            out = out * x**k
    return out


def reynolds_values(points: Sequence[Sequence], monomials: Sequence[Sequence[int]]) -> list:
    """Value of each Reynolds orbit sum at the point whose orbit list is ``points``."""
    return [_canon(sum((_monomial_value(m, p) for p in points), Fraction(0))) for m in monomials]


@dataclass
class SeparationResult:
    separated: bool
    degree: int
    route: str
    witness: Optional[tuple[int, ...]] = None
    value_v: object = None
    value_w: object = None

    def to_json(self) -> dict:
        return {
            "separated": self.separated,
            "degree": self.degree,
            "route": self.route,
            "witness": None if self.witness is None else list(self.witness),
            "value_v": _json_scalar(self.value_v),
            "value_w": _json_scalar(self.value_w),
        }


def _json_scalar(x):
    if x is None:
        return None
    x = _canon(x)
    if isinstance(x, Fraction):
        return str(x)
    return x.to_json()


def separated_by_degree(
    v: Sequence,
    w: Sequence,
    group: Union[GroupSpec, MatrixGroup],
    d: int,
    budget: int = DEFAULT_BUDGET,
    degree_cap: int = REYNOLDS_DEGREE_CAP,
) -> SeparationResult:
    """First invariant of degree <= d (canonical order) that differs on v and w.

    For the regular representation of an abelian group the candidates are
    the monomials ``x^b`` in character coordinates, ``b`` product-one of
    length <= d.  For a matrix group they are the Reynolds orbit sums of all
    monomials of degree 1..d in ascending graded-lex order.
    """
    if isinstance(group, GroupSpec):
        cv, cw = to_character_basis(v, group), to_character_basis(w, group)
        for b in enumerate_block_elements(group, d, budget):
            if b.is_zero():
                continue
            xv, xw = eval_monomial(b, cv), eval_monomial(b, cw)
            if xv != xw:
                return SeparationResult(True, d, "character-monomial", b.values, xv, xw)
        return SeparationResult(False, d, "character-monomial")
    if d > degree_cap:
        raise SeparationError(f"degree {d} exceeds Reynolds cap {degree_cap}")
    pv, pw = group.orbit_points(v), group.orbit_points(w)
    for m in monomials_up_to(group.dimension, d):
        xv = sum((_monomial_value(m, p) for p in pv), Fraction(0))
        xw = sum((_monomial_value(m, p) for p in pw), Fraction(0))
        if xv != xw:
            return SeparationResult(True, d, "reynolds", m, _canon(xv), _canon(xw))
    return SeparationResult(False, d, "reynolds")


def first_separating_degree(v, w, group, start: int = 1, stop: int = REYNOLDS_DEGREE_CAP):
    """Results for degrees ``start..`` until the pair is separated (or ``stop``)."""
    results = []
    for d in range(start, stop + 1):
        r = separated_by_degree(v, w, group, d)
        results.append(r)
        if r.separated:
            break
    return results


# --- the torus ------------------------------------------------------------------------


def verify_torus_separation(v: Sequence[Cyclotomic], w: Sequence[Cyclotomic], spec: GroupSpec) -> bool:
    """True iff every monomial in T (built from S) takes equal values on v and w.

    Both points must have all nontrivial character coordinates nonzero; on
    that torus this agreement is equivalent to lying in one orbit.
    """
    for name, c in (("v", v), ("w", w)):
        if len(c) != spec.size:
            raise SeparationError(f"{name} has {len(c)} coordinates, |G| = {spec.size}")
        zeros = [i for i in range(1, spec.size) if not c[i]]
        if zeros:
            raise NotInTorus(f"{name} has zero coordinates at characters {zeros}")
    return all(eval_monomial(s, v) == eval_monomial(s, w) for s in build_S(spec))


def same_orbit_diagonal(v: Sequence[Cyclotomic], w: Sequence[Cyclotomic], spec: GroupSpec) -> bool:
    target = list(w)
    return any(act_diagonal(h, v, spec) == target for h in range(spec.size))


# --- irreducible representations over non-closed fields ----------------------------


@dataclass
class IrreducibleForm:
    character: tuple[int, ...]
    order: int
    g_chi: tuple[int, ...]
    omega_exponent: int
    minimal_polynomial: list
    companion: Matrix
    generator_images: list[Matrix]

    @property
    def dimension(self) -> int:
        return len(self.companion)


def _mat_pow(a: Matrix, k: int) -> Matrix:
    n = len(a)
    result = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    for _ in range(k):
        result = _matmul(result, a)
    return result


def companion_matrix(monic_coeffs: Sequence) -> Matrix:
    """Companion matrix of ``x^l + a_{l-1} x^{l-1} + ... + a_0`` given ``[a_0, ..., a_{l-1}, 1]``."""
    ell = len(monic_coeffs) - 1
    rows = [[Fraction(0)] * ell for _ in range(ell)]
    for i in range(1, ell):
        rows[i][i - 1] = Fraction(1)
    for i in range(ell):
        rows[i][ell - 1] = -monic_coeffs[i]
    return as_matrix(rows)


def irreducible_real_form(chi, spec: GroupSpec, field: FieldDescriptor) -> IrreducibleForm:
    """The irreducible F-representation attached to the Galois orbit of ``chi``.

    ``g_chi`` is the first group element (lex order) whose value generates
    ``chi(G)``; the representation sends it to the companion matrix of the
    minimal polynomial of ``w_chi = chi(g_chi)`` over F.
    """
    chi = spec.reduce(chi)
    e = spec.exponent
    d = character_order(chi, spec)
    gamma = galois_group(field, spec)
    t_chi = None
    g_chi = None
    for g in spec.elements:
        t = pairing_exponent(chi, g, spec)
        if e // _gcd(t, e) == d:
            t_chi, g_chi = t, g
            break
    roots = sorted({(t_chi * k) % e for k in gamma.units})
    poly = [Cyclotomic.rational(e, 1)]
    for r in roots:
        # multiply by (x - w^r)
        root = Cyclotomic.root(e, r)
        new = [Cyclotomic.rational(e, 0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - root * c
        poly = new
    comp = companion_matrix(poly)
    images = []
    for i in range(spec.rank):
        gen = tuple(1 if k == i else 0 for k in range(spec.rank))
        t = pairing_exponent(chi, gen, spec)
        j = next(j for j in range(d) if (t_chi * j - t) % e == 0)
        images.append(_mat_pow(comp, j))
    return IrreducibleForm(
        character=chi,
        order=d,
        g_chi=g_chi,
        omega_exponent=t_chi,
        minimal_polynomial=[_canon(c) for c in poly],
        companion=comp,
        generator_images=images,
    )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def irreducible_decomposition(spec: GroupSpec, field: FieldDescriptor) -> list[IrreducibleForm]:
    """One irreducible form per Galois orbit of characters."""
    partition = orbit_partition(galois_group(field, spec), spec)
    return [irreducible_real_form(spec.elements[orb[0]], spec, field) for orb in partition.orbits]


def matrix_power(a: Matrix, k: int) -> Matrix:
    return _mat_pow(a, k)
