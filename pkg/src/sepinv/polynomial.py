"""Sparse multivariate polynomials with exact (rational or cyclotomic) coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def _is_zero(c) -> bool:
    return not c


class ExactPolynomial:
    """Immutable polynomial in ``nvars`` variables; zero coefficients are never stored."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | Iterable = ()) -> None:
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, object] = {}
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
            acc[exp] = acc[exp] + c if exp in acc else c
        self._terms = {e: c for e, c in acc.items() if not _is_zero(c)}

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> ExactPolynomial:
        return cls(len(exponent), {tuple(exponent): Fraction(coeff) if isinstance(coeff, int) else coeff})

    @classmethod
    def variable(cls, nvars: int, i: int) -> ExactPolynomial:
        return cls.monomial(tuple(1 if k == i else 0 for k in range(nvars)))

    @classmethod
    def constant(cls, nvars: int, c) -> ExactPolynomial:
        return cls(nvars, {(0,) * nvars: c})

    @property
    def terms(self) -> dict[Exponent, object]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def _lift(self, other) -> ExactPolynomial:
        if isinstance(other, ExactPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return ExactPolynomial.constant(self.nvars, other)

    def __add__(self, other) -> ExactPolynomial:
        o = self._lift(other)
        return ExactPolynomial(self.nvars, list(self._terms.items()) + list(o._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> ExactPolynomial:
        return ExactPolynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> ExactPolynomial:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> ExactPolynomial:
        return self._lift(other) - self

    def __mul__(self, other) -> ExactPolynomial:
        if not isinstance(other, ExactPolynomial):
            return ExactPolynomial(self.nvars, {e: c * other for e, c in self._terms.items()})
        o = self._lift(other)
        out: dict[Exponent, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return ExactPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> ExactPolynomial:
        result = ExactPolynomial.constant(self.nvars, Fraction(1))
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactPolynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __call__(self, point: Sequence):
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError(f"point of dimension {len(point)} for {self.nvars} variables")
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for x, k in zip(point, exp):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def compose_linear(self, matrix: Sequence[Sequence]) -> ExactPolynomial:
        """``p(A x)``: substitute ``x_i -> sum_j A[i][j] x_j``."""
        n = self.nvars
        forms = [
            ExactPolynomial(n, {tuple(1 if k == j else 0 for k in range(n)): matrix[i][j] for j in range(n)})
            for i in range(n)
        ]
        powers: dict[tuple[int, int], ExactPolynomial] = {}

        def power(i: int, k: int) -> ExactPolynomial:
            if (i, k) not in powers:
                powers[(i, k)] = forms[i] if k == 1 else power(i, k - 1) * forms[i]
            return powers[(i, k)]

        out = ExactPolynomial(n)
        for exp, c in self._terms.items():
            term = ExactPolynomial.constant(n, c)
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def text(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = [
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(exp) if k
            ]
            mono = "*".join(factors)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            elif isinstance(c, Fraction):
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"ExactPolynomial({self.text()})"


_TOKEN = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_polynomial(text: str, names: Sequence[str]) -> ExactPolynomial:
    """Parse ``"x5^2*x6 - 1/3*x6^3"`` style input with rational coefficients.

    Factors are separated by ``*`` or whitespace; a leading factor of the form
    ``p`` or ``p/q`` is the coefficient.
    """
    lookup = {name: i for i, name in enumerate(names)}
    n = len(names)
    body = text.strip()
    terms = []
    pos = 0
    while pos < len(body):
        m = _TOKEN.match(body, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(sign)
        exp = [0] * n
        for factor in re.split(r"[*\s]+", m.group(2).strip()):
            if not factor:
                continue
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in lookup:
                raise ValueError(f"unknown variable {name!r} in {text!r}")
            exp[lookup[name]] += int(power) if power else 1
        terms.append((tuple(exp), coeff))
    return ExactPolynomial(n, terms)


def monomials_up_to(nvars: int, max_degree: int, min_degree: int = 1) -> list[Exponent]:
    """All exponent vectors with ``min_degree <= degree <= max_degree`` in ascending graded-lex order."""
    out: list[Exponent] = []

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            yield prefix + [remaining]
            return
        for k in range(remaining, -1, -1):
            yield from rec(prefix + [k], remaining - k, slots - 1)

    for d in range(min_degree, max_degree + 1):
        block = [tuple(e) for e in rec([], d, nvars)] if nvars else []
        out.extend(sorted(block))
    return out
