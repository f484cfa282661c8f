"""Exact sparse polynomials over determinant, matrix-element and Z variables.

Coefficients are ``fractions.Fraction`` throughout.  Besides the ring
operations the module provides the differential action ``f(d/dA) g(A)`` and
the invariant (apolar) pairing ``<f, g> = f(d/dA) g(A) |_{A=0}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Iterable, Iterator, Mapping, Union

from .indexcore import IndexSet, Symbol

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class DetVar:
    """Free antisymmetric variable ``A_X`` (or the determinant ``a_X``)."""

    symbol: Symbol
    index: IndexSet

    @property
    def key(self) -> tuple:
        return (0, self.symbol.letter, self.symbol.family, self.index.elements)

    def __str__(self) -> str:
        return f"{self.symbol}_{{{self.index}}}"


@dataclass(frozen=True)
class MatrixVar:
    """Matrix element ``x^row_col``: upper (row) index and lower (column) index."""

    symbol: Symbol
    row: int
    col: int
    n: int

    def __post_init__(self):
        if not (1 <= self.row <= self.n and 1 <= self.col <= self.n):
            raise ValueError(f"matrix element {self.row},{self.col} outside 1..{self.n}")

    @property
    def key(self) -> tuple:
        return (1, self.symbol.letter, self.symbol.family, self.row, self.col)

    def __str__(self) -> str:
        return f"{self.symbol}^{self.row}_{self.col}"


@dataclass(frozen=True)
class ZVar:
    """Formal variable naming one determinant monomial of a bracket factor.

    ``factor`` is the position of the factor inside its spec; distinct factors
    get distinct variables even when their monomials coincide.
    """

    factor: int
    monomial: "Monomial"

    @property
    def key(self) -> tuple:
        return (2, self.factor, self.monomial.key)

    def __str__(self) -> str:
        body = " ".join(
            str(v) if e == 1 else f"{v}**{e}" for v, e in self.monomial.items
        )
        return f"[{body}]#{self.factor}"


Variable = Union[DetVar, MatrixVar, ZVar]


class Monomial:
    """Product of variables with positive exponents, in canonical order."""

    __slots__ = ("items", "key", "_hash")

    def __init__(self, items: Iterable[tuple[Any, int]] = ()):
        acc: dict = {}
        for v, e in items:
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                acc[v] = acc.get(v, 0) + e
        self.items = tuple(sorted(acc.items(), key=lambda ve: ve[0].key))
        self.key = tuple((v.key, e) for v, e in self.items)
        self._hash = hash(self.key)

    @classmethod
    def of(cls, *variables) -> "Monomial":
        return cls((v, 1) for v in variables)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.key == other.key

    def __lt__(self, other: "Monomial") -> bool:
        return self.key < other.key

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.items + other.items)

    def __pow__(self, k: int) -> "Monomial":
        return Monomial((v, e * k) for v, e in self.items)

    def __iter__(self) -> Iterator[tuple[Any, int]]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __repr__(self) -> str:
        return f"Monomial({render_monomial(self)})"

    def exponents(self) -> dict:
        return dict(self.items)

    def degree(self) -> int:
        return sum(e for _, e in self.items)

    def divides(self, other: "Monomial") -> bool:
        oe = other.exponents()
        return all(oe.get(v, 0) >= e for v, e in self.items)

    def factorial(self) -> int:
        """Multi-index factorial of the exponent vector."""
        out = 1
        for _, e in self.items:
            out *= factorial(e)
        return out


ONE = Monomial()


class SparsePoly:
    """Immutable polynomial: mapping Monomial -> nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping[Monomial, Rational], Iterable[tuple[Monomial, Rational]], None] = None):
        acc: dict[Monomial, Fraction] = {}
        if terms is not None:
            pairs = terms.items() if isinstance(terms, Mapping) else terms
            for m, c in pairs:
                acc[m] = acc.get(m, 0) + Fraction(c)
        self.terms = {m: c for m, c in acc.items() if c != 0}

    @classmethod
    def const(cls, c: Rational) -> "SparsePoly":
        return cls({ONE: c})

    @classmethod
    def var(cls, v, coeff: Rational = 1) -> "SparsePoly":
        return cls({Monomial.of(v): coeff})

    @classmethod
    def monomial(cls, m: Monomial, coeff: Rational = 1) -> "SparsePoly":
        return cls({m: coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(other)
        return isinstance(other, SparsePoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"SparsePoly({render(self)})"

    def items(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical monomial order."""
        return sorted(self.terms.items(), key=lambda mc: mc[0].key)

    def support(self) -> list[Monomial]:
        return [m for m, _ in self.items()]

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        return add(self, _lift(other))

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return scale(self, -1)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return add(self, scale(_lift(other), -1))

    def __rsub__(self, other) -> "SparsePoly":
        return add(_lift(other), -self)

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        out = SparsePoly.const(1)
        for _ in range(k):
            out = mul(out, self)
        return out

    def map_variables(self, fn) -> "SparsePoly":
        """Substitute each variable by the polynomial ``fn(var)``."""
        cache: dict = {}
        out = SparsePoly()
        for m, c in self.terms.items():
            term = SparsePoly.const(c)
            for v, e in m:
                if v not in cache:
                    cache[v] = fn(v)
                term = mul(term, cache[v] ** e)
            out = add(out, term)
        return out


def _lift(p) -> SparsePoly:
    if isinstance(p, SparsePoly):
        return p
    return SparsePoly.const(p)


def add(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    acc = dict(p.terms)
    for m, c in q.terms.items():
        acc[m] = acc.get(m, 0) + c
    return SparsePoly(acc)


def scale(p: SparsePoly, c: Rational) -> SparsePoly:
    c = Fraction(c)
    return SparsePoly({m: c * v for m, v in p.terms.items()})


def mul(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    acc: dict[Monomial, Fraction] = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = m1 * m2
            acc[m] = acc.get(m, 0) + c1 * c2
    return SparsePoly(acc)


def _falling(e: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= e - i
    return out


def apply_diff(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Apply ``f(d/dA)`` to ``g(A)``: every variable of ``f`` acts as its partial derivative."""
    acc: dict[Monomial, Fraction] = {}
    for mf, cf in f.terms.items():
        df = mf.exponents()
        for mg, cg in g.terms.items():
            eg = mg.exponents()
            weight = 1
            rest = []
            for v, e in eg.items():
                k = df.get(v, 0)
                if k > e:
                    weight = 0
                    break
                weight *= _falling(e, k)
                rest.append((v, e - k))
            if weight == 0 or any(v not in eg for v in df):
                continue
            m = Monomial(rest)
            acc[m] = acc.get(m, 0) + cf * cg * weight
    return SparsePoly(acc)


def pairing_by_operator(f: SparsePoly, g: SparsePoly) -> Fraction:
    """``<f, g>`` computed literally: differentiate, then set every variable to 0."""
    return apply_diff(f, g).coeff(ONE)


def pairing(f: SparsePoly, g: SparsePoly) -> Fraction:
    """``<f, g> = sum_m f_m g_m m!`` over monomials shared by ``f`` and ``g``."""
    small, big = (f, g) if len(f) <= len(g) else (g, f)
    total = Fraction(0)
    for m, c in small.terms.items():
        other = big.terms.get(m)
        if other is not None:
            total += c * other * m.factorial()
    return total


def render_rational(c: Rational) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def render_monomial(m: Monomial) -> str:
    if not m.items:
        return "1"
    return "*".join(str(v) if e == 1 else f"{v}**{e}" for v, e in m.items)


def render(p: SparsePoly) -> str:
    """Deterministic text form: canonical term order, coefficients as ``p/q``."""
    if not p.terms:
        return "0"
    parts = []
    for m, c in p.items():
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {render_rational(abs(c))}*{render_monomial(m)}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def poly_to_json(p: SparsePoly) -> list[dict]:
    return [{"monomial": render_monomial(m), "coeff": render_rational(c)} for m, c in p.items()]
