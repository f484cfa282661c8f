"""gl(n) 6j-symbols from four bracket semi-invariants.

The four specs ``f1..f4`` are contracted through six families of free
antisymmetric variables ``A^1..A^6``.  Each letter of each spec is sent to one
family, either as a variable or as the corresponding derivative:

====  =======  =======  =======
spec  a        b        c
====  =======  =======  =======
f1    d/dA^1   d/dA^2   A^4
f2    d/dA^4   d/dA^3   A^5
f3    A^2      A^3      d/dA^6
f4    A^1      A^6      d/dA^5
====  =======  =======  =======

Two independent evaluations are provided.  :func:`sixj_value` sums
``pr(x)! / x! * z^x`` over the quadruples of Z-exponents selected by the
equal-power rule; :func:`sixj_oracle` contracts the determinant-form
polynomials family by family with the apolar pairing.
"""

from __future__ import annotations

import itertools
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .indexcore import Symbol
from .polyalg import DetVar, Monomial, SparsePoly, ZVar, pairing, render_monomial
from .seminv import BracketSpec, Expansion, expand, infer_weights, validate

log = logging.getLogger(__name__)

DER, VAR = "derivative", "variable"

FAMILY_MAP: tuple[dict[str, tuple[int, str]], ...] = (
    {"a": (1, DER), "b": (2, DER), "c": (4, VAR)},
    {"a": (4, DER), "b": (3, DER), "c": (5, VAR)},
    {"a": (2, VAR), "b": (3, VAR), "c": (6, DER)},
    {"a": (1, VAR), "b": (6, VAR), "c": (5, DER)},
)

# representation carried by each family, in the usual 6j labelling
FAMILY_NAMES = {1: "V1", 2: "V2", 3: "V3", 4: "U", 5: "W", 6: "H"}

WORKERS_ENV = "GLN6J_WORKERS"


def family_sides(j: int) -> tuple[tuple[int, str], tuple[int, str]]:
    """``((spec, letter) on the derivative side, (spec, letter) on the variable side)``."""
    der = var = None
    for i, table in enumerate(FAMILY_MAP):
        for letter, (fam, role) in table.items():
            if fam == j:
                if role == DER:
                    der = (i, letter)
                else:
                    var = (i, letter)
    return der, var


@dataclass(frozen=True)
class SixJProblem:
    n: int
    specs: tuple[BracketSpec, BracketSpec, BracketSpec, BracketSpec]
    expansions: tuple[Expansion, ...]
    weights: dict  # family -> weight (derivative side)
    mismatches: tuple[str, ...]

    def family_weights_json(self) -> dict:
        return {FAMILY_NAMES[j]: list(w) for j, w in sorted(self.weights.items())}


def build_problem(n: int, f1: BracketSpec, f2: BracketSpec, f3: BracketSpec, f4: BracketSpec) -> SixJProblem:
    specs = (f1, f2, f3, f4)
    for k, s in enumerate(specs, 1):
        if s.n != n:
            raise ValueError(f"f{k} has rank {s.n}, problem rank is {n}")
        validate(s)
    letter_weights = [infer_weights(s) for s in specs]
    weights = {}
    mismatches = []
    for j in range(1, 7):
        (di, dl), (vi, vl) = family_sides(j)
        wd, wv = letter_weights[di][dl], letter_weights[vi][vl]
        weights[j] = wd
        if wd != wv:
            msg = (f"family A{j}: f{di + 1}.{dl} has weight {list(wd)} but "
                   f"f{vi + 1}.{vl} has weight {list(wv)}; the 6j-symbol vanishes")
            log.warning(msg)
            mismatches.append(msg)
    expansions = tuple(expand(s) for s in specs)
    return SixJProblem(n, specs, expansions, weights, tuple(mismatches))


# -- Z-variable side ----------------------------------------------------------

def family_image(spec_index: int, z: ZVar) -> Monomial:
    """``pr``: the family-variable monomial that a Z-variable of ``f_i`` stands for."""
    table = FAMILY_MAP[spec_index]
    return Monomial(
        (DetVar(Symbol.fam(table[v.symbol.letter][0]), v.index), e) for v, e in z.monomial
    )


def split_families(m: Monomial) -> dict[int, Monomial]:
    parts: dict[int, list] = {}
    for v, e in m:
        parts.setdefault(v.symbol.family, []).append((v, e))
    return {j: Monomial(items) for j, items in parts.items()}


def support(ex: Expansion) -> list[Monomial]:
    """Z-exponents of ``f``: a degree-``t`` multiset of each factor's variables."""
    per_factor = []
    for reg in ex.registries:
        if not reg.entries:
            return []
        per_factor.append([
            Monomial((z, 1) for z in combo)
            for combo in itertools.combinations_with_replacement(reg.entries, reg.power)
        ])
    out = []
    for combo in itertools.product(*per_factor):
        m = Monomial()
        for part in combo:
            m = m * part
        out.append(m)
    return out


@dataclass(frozen=True)
class SupportPoint:
    x: Monomial  # exponent in Z-variables
    families: dict  # family -> exponent part of pr(x)

    def part(self, j: int) -> Monomial:
        return self.families.get(j, Monomial())


def _points(p: SixJProblem, i: int) -> list[SupportPoint]:
    out = []
    for x in support(p.expansions[i]):
        image = Monomial()
        for z, e in x:
            image = image * (family_image(i, z) ** e)
        out.append(SupportPoint(x, split_families(image)))
    return out


@dataclass(frozen=True)
class SelectionSet:
    quadruples: tuple[tuple[SupportPoint, SupportPoint, SupportPoint, SupportPoint], ...]

    def __len__(self) -> int:
        return len(self.quadruples)

    def to_json(self) -> list[list[str]]:
        return [[render_monomial(pt.x) for pt in q] for q in self.quadruples]


def _index(points, families) -> dict:
    out: dict = {}
    for pt in points:
        out.setdefault(tuple(pt.part(j) for j in families), []).append(pt)
    return out


def selection_set(p: SixJProblem) -> SelectionSet:
    """Quadruples of support points whose family exponents agree on both sides.

    Equivalent to filtering the Cartesian product of the four supports, done as
    a join: f1 fixes families 1, 2, 4; f4 must match family 1; f2 families 4, 5;
    f3 families 2, 3, 6.
    """
    pts = [_points(p, i) for i in range(4)]
    by4 = _index(pts[3], (1,))
    by2 = _index(pts[1], (4, 5))
    by3 = _index(pts[2], (2, 3, 6))
    out = []
    for q1 in pts[0]:
        for q4 in by4.get((q1.part(1),), ()):
            for q2 in by2.get((q1.part(4), q4.part(5)), ()):
                key = (q1.part(2), q2.part(3), q4.part(6))
                for q3 in by3.get(key, ()):
                    out.append((q1, q2, q3, q4))
    out.sort(key=lambda q: tuple(pt.x.key for pt in q))
    return SelectionSet(tuple(out))


def _contribution(q, zvalues) -> Fraction:
    num = 1
    for j in range(1, 7):
        (di, _), _ = family_sides(j)
        num *= q[di].part(j).factorial()
    den = 1
    zprod = 1
    for i, pt in enumerate(q):
        den *= pt.x.factorial()
        for z, e in pt.x:
            zprod *= zvalues[i][z] ** e
    return Fraction(num * zprod, den)


def _sum_chunk(args) -> Fraction:
    chunk, zvalues = args
    return sum((_contribution(q, zvalues) for q in chunk), Fraction(0))


def _workers(workers: Optional[int]) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    return max(1, workers)


def sixj_value(p: SixJProblem, selection: Optional[SelectionSet] = None,
               workers: Optional[int] = None) -> Fraction:
    """Finite hypergeometric sum over the selection set, evaluated at the numbers ``z``."""
    sel = selection if selection is not None else selection_set(p)
    zvalues = [
        {z: reg.values[z] for reg in ex.registries for z in reg.entries} for ex in p.expansions
    ]
    quads = list(sel.quadruples)
    k = _workers(workers)
    if k == 1 or len(quads) < 2:
        return _sum_chunk((quads, zvalues))
    size = -(-len(quads) // k)
    chunks = [(quads[i:i + size], zvalues) for i in range(0, len(quads), size)]
    with ProcessPoolExecutor(max_workers=k) as pool:
        parts = list(pool.map(_sum_chunk, chunks))
    return sum(parts, Fraction(0))


# -- differential contraction -------------------------------------------------

def family_polynomial(p: SixJProblem, i: int) -> SparsePoly:
    """Determinant form of ``f_i`` with its letters replaced by family variables."""
    table = FAMILY_MAP[i]

    def sub(v):
        return SparsePoly.var(DetVar(Symbol.fam(table[v.symbol.letter][0]), v.index))

    return p.expansions[i].detpoly.map_variables(sub)


def _group(poly: SparsePoly, keep: Sequence[int], key: Sequence[int]) -> dict:
    """Split each monomial into a ``key`` part and a ``keep`` part; sum ``keep`` parts per key."""
    out: dict = {}
    for m, c in poly.terms.items():
        parts = split_families(m)
        k = tuple(parts.get(j, Monomial()) for j in key)
        kept = Monomial()
        for j in keep:
            kept = kept * parts.get(j, Monomial())
        out.setdefault(k, {}).setdefault(kept, 0)
        out[k][kept] += c
    return {k: SparsePoly(v) for k, v in out.items()}


def sixj_oracle(p: SixJProblem) -> Fraction:
    """Apply the derivative-side families to the variable-side ones and set ``A = 0``.

    Contracts family 1 (f1 with f4), then families 4 and 5 (with f2), then
    families 2, 3 and 6 (with f3), pairing collected polynomials at each step.
    """
    g1, g2, g3, g4 = (family_polynomial(p, i) for i in range(4))
    if not (g1 and g2 and g3 and g4):
        return Fraction(0)

    # step 1: d/dA^1 in f1 against A^1 in f4
    left = _group(g1, keep=(1,), key=(2, 4))
    right = _group(g4, keep=(1,), key=(6, 5))
    state: dict = {}
    for (m2, m4), pl in left.items():
        for (m6, m5), pr in right.items():
            c = pairing(pl, pr)
            if c:
                k = (m2, m6, m4 * m5)
                state[k] = state.get(k, 0) + c

    # step 2: A^4 (f1) against d/dA^4 (f2) and A^5 (f2) against d/dA^5 (f4)
    grouped: dict = {}
    for (m2, m6, m45), c in state.items():
        grouped.setdefault((m2, m6), {}).setdefault(m45, 0)
        grouped[(m2, m6)][m45] += c
    f2_parts = _group(g2, keep=(4, 5), key=(3,))
    state2: dict = {}
    for (m2, m6), terms in grouped.items():
        pl = SparsePoly(terms)
        for (m3,), pr in f2_parts.items():
            c = pairing(pl, pr)
            if c:
                k = m2 * m6 * m3
                state2[k] = state2.get(k, 0) + c

    # step 3: d/dA^2 (f1), d/dA^3 (f2), A^6 (f4) against f3
    return pairing(SparsePoly(state2), g3)
