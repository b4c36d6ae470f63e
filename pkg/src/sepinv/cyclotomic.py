"""Exact arithmetic in cyclotomic fields Q(w_n).

Rationals are :class:`fractions.Fraction`.  An element of Q(w_n) is stored as
its coefficient vector in the power basis ``1, w, ..., w^(phi(n)-1)``, i.e.
reduced modulo the n-th cyclotomic polynomial, so equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "Cyclotomic"]

MAX_ORDER = 10**6


class CyclotomicError(ArithmeticError):
    pass


# --- dense polynomial helpers over Q / Z (lowest degree first) ---------------


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Long division; ``b`` must be nonzero.  Exact over Z when ``b`` is monic."""
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] if lead == 1 else Fraction(a[-1]) / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a.pop()
        _trim(a)
    return q, a


def totient(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, _cyclotomic(d))
            assert not rem
    return tuple(int(c) for c in num)


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    if n > MAX_ORDER:
        raise ValueError(f"cyclotomic order {n} exceeds cap {MAX_ORDER}")
    return _cyclotomic(n)


def _reduce(coeffs: Sequence, n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    work = [Fraction(c) for c in coeffs]
    # Phi_n is monic: fold high powers down.
    for top in range(len(work) - 1, deg - 1, -1):
        c = work[top]
        if c:
            shift = top - deg
            for i in range(deg):
                if phi[i]:
                    work[shift + i] -= c * phi[i]
    work = work[:deg]
    work.extend([Fraction(0)] * (deg - len(work)))
    return tuple(work)


def parse_fraction(s: str | int | Fraction) -> Fraction:
    if isinstance(s, str) and any(ch in s for ch in ".eE"):
        raise ValueError(f"expected a fraction string, got {s!r}")
    return Fraction(s)


class Cyclotomic:
    """Immutable element of Q(w_n).

    ``Cyclotomic(n, coeffs)`` reduces ``sum coeffs[i] * w**i`` modulo Phi_n;
    ``coeffs`` may be longer than phi(n).
    """

    __slots__ = ("_n", "_c", "_hash")

    def __init__(self, n: int, coeffs: Iterable = ()) -> None:
        if n < 1:
            raise ValueError(f"cyclotomic order must be positive, got {n}")
        self._n = n
        self._c = _reduce(list(coeffs), n)
        self._hash = None

    @classmethod
    def _raw(cls, n: int, coeffs: tuple[Fraction, ...]) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj._n = n
        obj._c = coeffs
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, n: int, value) -> Cyclotomic:
        deg = totient(n)
        return cls._raw(n, (Fraction(value),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def root(cls, n: int, k: int = 1) -> Cyclotomic:
        """The root of unity w_n**k."""
        k %= n
        return cls(n, [0] * k + [1])

    @property
    def order(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def is_rational(self) -> bool:
        return all(c == 0 for c in self._c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise CyclotomicError(f"{self} is not rational")
        return self._c[0]

    def is_zero(self) -> bool:
        return not any(self._c)

    # -- coercion -------------------------------------------------------------

    def _coerce(self, other) -> Cyclotomic | None:
        if isinstance(other, Cyclotomic):
            if other._n != self._n:
                raise CyclotomicError(
                    f"mismatched cyclotomic orders {self._n} and {other._n}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(self._n, other)
        return None

    # -- field operations -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self._n, tuple(a + b for a, b in zip(self._c, o._c)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self._n, tuple(-a for a in self._c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self._n, tuple(a - b for a, b in zip(self._c, o._c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self._n, tuple(a * other for a in self._c))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self._n, _reduce(_poly_mul(self._c, o._c), self._n))

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # invariant: r_i = s_i * self (mod Phi_n)
        r0, r1 = [Fraction(c) for c in cyclotomic_polynomial(self._n)], _trim(list(self._c))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant since Phi_n is irreducible
        c = Fraction(r1[0])
        return Cyclotomic(self._n, [Fraction(x) / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in a cyclotomic field")
            return Cyclotomic._raw(self._n, tuple(a / other for a in self._c))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> Cyclotomic:
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(self._n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self._n == other._n and self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self._c[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._c[0]) if self.is_rational() else hash((self._n, self._c))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- galois action -----------------------------------------------------------

    def galois(self, k: int) -> Cyclotomic:
        """Image under the automorphism w -> w**k (gcd(k, n) = 1)."""
        n = self._n
        if gcd(k, n) != 1:
            raise CyclotomicError(f"{k} is not a unit modulo {n}")
        work = [Fraction(0)] * n
        for i, c in enumerate(self._c):
            if c:
                work[(i * k) % n] += c
        return Cyclotomic(n, work)

    # -- text / json ---------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Cyclotomic({self._n}, {[str(c) for c in self._c]})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self._c):
            if c == 0:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")

    def to_json(self) -> dict:
        return {"n": self._n, "coeffs": [str(c) for c in self._c]}

    @classmethod
    def from_json(cls, data: dict) -> Cyclotomic:
        n = int(data["n"])
        coeffs = [parse_fraction(c) for c in data["coeffs"]]
        if len(coeffs) != totient(n):
            raise ValueError(f"expected {totient(n)} coefficients for n={n}, got {len(coeffs)}")
        return cls(n, coeffs)


def _poly_sub(a: Sequence, b: Sequence) -> list:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


class GaloisAutomorphism:
    """The automorphism w_n -> w_n**unit of Q(w_n)."""

    __slots__ = ("order", "unit")

    def __init__(self, order: int, unit: int) -> None:
        unit %= order
        if gcd(unit, order) != 1:
            raise CyclotomicError(f"{unit} is not a unit modulo {order}")
        self.order = order
        self.unit = unit

    def __call__(self, a: Cyclotomic) -> Cyclotomic:
        return galois_apply(self, a)

    def __matmul__(self, other: GaloisAutomorphism) -> GaloisAutomorphism:
        # composition self after other: w -> w**(other.unit * self.unit)
        return GaloisAutomorphism(self.order, self.unit * other.unit)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GaloisAutomorphism)
            and self.order == other.order
            and self.unit == other.unit
        )

    def __hash__(self) -> int:
        return hash((self.order, self.unit))

    def __repr__(self) -> str:
        return f"GaloisAutomorphism({self.order}, {self.unit})"


def galois_apply(sigma: GaloisAutomorphism, a: Cyclotomic) -> Cyclotomic:
    if sigma.order != a.order:
        raise CyclotomicError(
            f"automorphism of Q(w_{sigma.order}) applied to element of Q(w_{a.order})"
        )
    return a.galois(sigma.unit)


def cyc_add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def cyc_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def cyc_inv(a: Cyclotomic) -> Cyclotomic:
    return a.inverse()
