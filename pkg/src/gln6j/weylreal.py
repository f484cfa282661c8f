"""Functional (Weyl) realization: minors of a generic matrix and Young symmetrizers.

This is a verification layer for small ranks.  Matrix elements ``x^j_i`` carry an
upper (row) index ``j`` and a lower (column) index ``i``; the minor ``x_{i1..ik}``
uses rows ``1..k`` and columns ``i1..ik``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .indexcore import IndexSet, Symbol, permutation_sign
from .polyalg import DetVar, MatrixVar, Monomial, SparsePoly


class OverlayError(ValueError):
    pass


def _check_weight(weight: Sequence[int]) -> tuple[int, ...]:
    w = tuple(weight)
    if any(x < 0 for x in w) or any(x < y for x, y in zip(w, w[1:])):
        raise OverlayError(f"weight {list(w)} is not a non-negative weakly decreasing sequence")
    return w


def expand_determinant(symbol: Symbol, X: IndexSet) -> SparsePoly:
    """The ``k x k`` minor with rows ``1..k`` and columns ``X`` as ``k!`` signed monomials."""
    terms = {}
    for perm in itertools.permutations(X.elements):
        m = Monomial.of(*(MatrixVar(symbol, r + 1, col, X.n) for r, col in enumerate(perm)))
        terms[m] = permutation_sign(perm)
    return SparsePoly(terms)


def to_matrix_form(p: SparsePoly) -> SparsePoly:
    """Replace every determinant variable by its minor."""
    return p.map_variables(
        lambda v: expand_determinant(v.symbol, v.index) if isinstance(v, DetVar) else SparsePoly.var(v)
    )


@dataclass(frozen=True)
class YoungTableau:
    """Row ``r`` has ``weight[r-1]`` cells, all filled with ``r``."""

    weight: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weight", _check_weight(self.weight))

    @property
    def rows(self) -> list[list[tuple[int, int]]]:
        return [[(r, c) for c in range(1, m + 1)] for r, m in enumerate(self.weight, 1) if m]

    @property
    def columns(self) -> list[list[tuple[int, int]]]:
        width = self.weight[0] if self.weight else 0
        return [[(r, c) for r, m in enumerate(self.weight, 1) if m >= c] for c in range(1, width + 1)]

    def hook_product(self) -> int:
        heights = [len(col) for col in self.columns]
        out = 1
        for r, m in enumerate(self.weight, 1):
            for c in range(1, m + 1):
                out *= (m - c) + (heights[c - 1] - r) + 1
        return out


def _block_permutations(blocks, signed: bool):
    """All permutations of cells preserving each block, with sign if ``signed``."""
    per_block = []
    for block in blocks:
        opts = []
        for image in itertools.permutations(block):
            sign = permutation_sign([block.index(c) for c in image]) if signed else 1
            opts.append((dict(zip(block, image)), sign))
        per_block.append(opts)
    for combo in itertools.product(*per_block):
        mapping = {}
        sign = 1
        for part, s in combo:
            mapping.update(part)
            sign *= s
        yield mapping, sign


def young_overlay(m: Monomial, weight: Sequence[int]) -> SparsePoly:
    """Young symmetrizer of ``weight`` applied to the upper indexes of ``m``.

    Columns are antisymmetrized, then rows symmetrized; no normalization.
    Factors with upper index ``r`` occupy row ``r`` in canonical order; the
    result does not depend on that choice.
    """
    tab = YoungTableau(tuple(weight))
    factors = []
    for v, e in m:
        if not isinstance(v, MatrixVar):
            raise OverlayError(f"overlay needs matrix elements, got {v}")
        factors.extend([v] * e)
    symbols = {v.symbol for v in factors}
    if len(symbols) > 1:
        raise OverlayError("overlay acts on one symbol at a time")
    counts = [sum(1 for v in factors if v.row == r) for r in range(1, len(tab.weight) + 1)]
    if tuple(counts) != tab.weight or len(factors) != sum(tab.weight):
        raise OverlayError(f"upper-index multiplicities {counts} do not match weight {list(tab.weight)}")
    if not factors:
        return SparsePoly.const(1)
    symbol, n = factors[0].symbol, factors[0].n

    lower = {}
    for r, row in enumerate(tab.rows, 1):
        cols = sorted(v.col for v in factors if v.row == r)
        for cell, col in zip(row, cols):
            lower[cell] = col
    cells = list(lower)
    rows = list(_block_permutations(tab.rows, signed=False))
    cols = list(_block_permutations(tab.columns, signed=True))
    acc: dict[Monomial, int] = {}
    for rho, _ in rows:
        for gamma, sign in cols:
            mono = Monomial.of(*(MatrixVar(symbol, gamma[rho[c]][0], lower[c], n) for c in cells))
            acc[mono] = acc.get(mono, 0) + sign
    return SparsePoly(acc)


def overlay_poly(p: SparsePoly, weight: Sequence[int]) -> SparsePoly:
    """Linear extension of :func:`young_overlay` to a polynomial."""
    out = SparsePoly()
    for m, c in p.terms.items():
        out = out + young_overlay(m, weight) * c
    return out


def _set_splits(content: list[int], sizes: list[int], n: int):
    """Unordered ways to split a multiset of lower indexes into sets of the given sizes."""
    if not sizes:
        if not content:
            yield []
        return
    k = sizes[0]
    for combo in set(itertools.combinations(content, k)):
        if len(set(combo)) < k:
            continue
        rest = list(content)
        for x in combo:
            rest.remove(x)
        for tail in _set_splits(rest, sizes[1:], n):
            if tail and len(tail[0]) == k and tail[0] < combo:
                continue
            yield [combo] + tail


def collect_determinants(p: SparsePoly, weight: Sequence[int]) -> SparsePoly:
    """Rewrite a matrix-element polynomial as a polynomial in minors.

    Candidates are all products of minors with column heights of ``weight`` and the
    right lower-index content; the coefficients solve an exact linear system
    (free parameters set to 0, since Plücker relations make them non-unique).
    Raises ``OverlayError`` if ``p`` is not in the span.
    """
    if not p:
        return SparsePoly()
    tab = YoungTableau(tuple(weight))
    sizes = [len(c) for c in tab.columns]
    mvars = [v for v in p.variables()]
    if any(not isinstance(v, MatrixVar) for v in mvars):
        raise OverlayError("collection expects matrix elements only")
    symbol, n = mvars[0].symbol, mvars[0].n
    contents = {tuple(sorted(v.col for v, e in m for _ in range(e))) for m in p.terms}
    candidates = []
    for content in sorted(contents):
        for split in _set_splits(list(content), sizes, n):
            candidates.append(Monomial.of(*(DetVar(symbol, IndexSet(n, s)) for s in split)))
    if not candidates:
        raise OverlayError("no determinant monomial has the required shape")
    expansions = [to_matrix_form(SparsePoly.monomial(c)) for c in candidates]
    rows = sorted({m for e in expansions for m in e.terms} | set(p.terms), key=lambda m: m.key)
    A = sympy.Matrix([[sympy.Rational(e.coeff(m)) for e in expansions] for m in rows])
    b = sympy.Matrix([sympy.Rational(p.coeff(m)) for m in rows])
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError as exc:
        raise OverlayError("polynomial is not a combination of determinant monomials") from exc
    sol = sol.subs({t: 0 for t in params})
    return SparsePoly({c: Fraction(int(x.p), int(x.q)) for c, x in zip(candidates, sol)})


def membership_check(p: SparsePoly, weight: Sequence[int]) -> bool:
    """Every monomial has degree ``m_k - m_{k+1}`` in the size-``k`` minors."""
    if not p:
        raise OverlayError("zero polynomial")
    w = list(weight)
    for m in p.terms:
        degrees: dict[int, int] = {}
        for v, e in m:
            if not isinstance(v, DetVar):
                return False
            degrees[len(v.index)] = degrees.get(len(v.index), 0) + e
        n = max(len(w), max(degrees, default=0))
        padded = w + [0] * (n + 1 - len(w))
        for k in range(1, n + 1):
            if degrees.get(k, 0) != padded[k - 1] - padded[k]:
                return False
    return True


def highest_vector(weight: Sequence[int], n: int, symbol: Symbol = Symbol("a")) -> SparsePoly:
    """``x_1^{m1-m2} x_{1,2}^{m2-m3} ... x_{1..n}^{mn}``."""
    w = list(_check_weight(weight)) + [0]
    items = []
    for k in range(1, n + 1):
        e = w[k - 1] - w[k]
        if e:
            items.append((DetVar(symbol, IndexSet(n, tuple(range(1, k + 1)))), e))
    return SparsePoly.monomial(Monomial(items))


def proportionality(p: SparsePoly, q: SparsePoly):
    """The scalar ``c`` with ``p == c * q``, or None."""
    if not q:
        return None
    m0, c0 = q.items()[0]
    ratio = p.coeff(m0) / c0
    return ratio if p == q * ratio else None


def functional_expansion(spec) -> SparsePoly:
    """A bracket spec built literally in matrix elements.

    Each slot ``x^u`` becomes ``x^u_i``; lower indexes are antisymmetrized per
    bracket and each letter's upper indexes get the Young symmetrizer of its
    weight.  Exponential cost; for cross-checks at small rank.
    """
    from .seminv import infer_weights  # seminv does not depend on this module

    n = spec.n
    total = SparsePoly.const(1)
    for f in spec.factors:
        weights = infer_weights(type(spec)(n, (type(f)(f.brackets, 1),)))
        acc = SparsePoly()
        perms = list(itertools.permutations(range(1, n + 1)))
        for choice in itertools.product(perms, repeat=len(f.brackets)):
            sign = 1
            for c in choice:
                sign *= permutation_sign(c)
            term = SparsePoly.const(sign)
            for letter in ("a", "b", "c"):
                vs = [MatrixVar(Symbol(letter), s.upper, choice[b][p], n)
                      for b, br in enumerate(f.brackets) for p, s in enumerate(br) if s.letter == letter]
                if vs:
                    term = term * young_overlay(Monomial.of(*vs), weights[letter])
            acc = acc + term
        total = total * acc ** f.power
    return total
