"""Bracket semi-invariants of a triple tensor product and their Z-variable form.

A spec such as ``((a1 a2 a3 b1)(b2 c1 c2 c3))`` is a product of factors; each
factor is a group of brackets of ``n`` slots.  Expanding a factor antisymmetrizes
the lower indexes inside every bracket and collects, per letter, the slots
forming one Young-tableau column ("chain") into a determinant variable.  The
resulting determinant monomials are the Z-variables of the factor and their
integer coefficients are the numbers ``z``.
"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Optional

from .indexcore import LETTERS, Symbol, normalize, permutation_sign
from .polyalg import DetVar, Monomial, SparsePoly, ZVar

log = logging.getLogger(__name__)


class SpecError(ValueError):
    """Invalid bracket spec; ``code`` names the violated invariant."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class Slot:
    letter: str
    upper: int

    def __str__(self) -> str:
        return f"{self.letter}{self.upper}"


@dataclass(frozen=True)
class Factor:
    brackets: tuple[tuple[Slot, ...], ...]
    power: int = 1

    def slots(self) -> Iterable[tuple[int, int, Slot]]:
        for b, bracket in enumerate(self.brackets):
            for p, slot in enumerate(bracket):
                yield b, p, slot

    def multiplicities(self, letter: str) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, _, s in self.slots():
            if s.letter == letter:
                out[s.upper] = out.get(s.upper, 0) + 1
        return out


@dataclass(frozen=True)
class BracketSpec:
    n: int
    factors: tuple[Factor, ...]

    @classmethod
    def build(cls, n: int, factors) -> "BracketSpec":
        """Convenience constructor from nested lists of ``"a1"``-style strings.

        ``factors`` is a list of ``(brackets, power)`` pairs or bare bracket lists.
        """
        out = []
        for f in factors:
            if isinstance(f, tuple) and len(f) == 2 and isinstance(f[1], int):
                brackets, power = f
            else:
                brackets, power = f, 1
            out.append(
                Factor(
                    tuple(tuple(Slot(s[0], int(s[1:])) for s in br) for br in brackets),
                    power,
                )
            )
        return cls(n, tuple(out))

    def __str__(self) -> str:
        return render_spec(self)


def render_spec(spec: BracketSpec) -> str:
    parts = []
    for f in spec.factors:
        body = "".join("(" + " ".join(map(str, br)) + ")" for br in f.brackets)
        parts.append(f"({body})" + (f"^{f.power}" if f.power != 1 else ""))
    return "".join(parts)


# -- validation ---------------------------------------------------------------

def diagnose(spec: BracketSpec) -> list[tuple[str, str]]:
    """All invariant violations as ``(code, message)`` pairs, in reading order."""
    out = []
    n = spec.n
    if n < 1:
        return [("rank", f"rank must be positive, got {n}")]
    if not spec.factors:
        out.append(("empty", "spec has no factors"))
    for fi, f in enumerate(spec.factors, 1):
        if f.power < 1:
            out.append(("power", f"factor {fi}: power {f.power} must be positive"))
        if not f.brackets:
            out.append(("empty", f"factor {fi} has no brackets"))
        for bi, br in enumerate(f.brackets, 1):
            if len(br) != n:
                out.append(("bracket-size", f"factor {fi} bracket {bi}: size {len(br)} != n={n}"))
            for s in br:
                if s.letter not in LETTERS:
                    out.append(("letter", f"factor {fi}: unknown letter {s.letter!r}"))
                if not 1 <= s.upper <= n:
                    out.append(("upper-index", f"factor {fi}: upper index {s.upper} outside 1..{n}"))
        total = sum(len(br) for br in f.brackets)
        if total % n:
            out.append(("divisibility", f"factor {fi}: {total} slots not divisible by n={n}"))
        for letter in LETTERS:
            mult = f.multiplicities(letter)
            if not mult:
                continue
            vec = [mult.get(r, 0) for r in range(1, max(mult) + 1)]
            if any(x < y for x, y in zip(vec, vec[1:])):
                out.append((
                    "weight-order",
                    f"factor {fi}: letter {letter} has upper-index multiplicities "
                    f"{tuple(vec)} not weakly decreasing",
                ))
    return out


def validate(spec: BracketSpec) -> None:
    problems = diagnose(spec)
    if problems:
        code, message = problems[0]
        raise SpecError(code, message)


def infer_weights(spec: BracketSpec) -> dict[str, tuple[int, ...]]:
    """Highest weight of each letter's representation (multiplicities of upper indexes)."""
    out = {}
    for letter in LETTERS:
        w = [0] * spec.n
        for f in spec.factors:
            for r, k in f.multiplicities(letter).items():
                w[r - 1] += k * f.power
        out[letter] = tuple(w)
    return out


def conjugate(weight: Iterable[int]) -> list[int]:
    weight = [w for w in weight if w > 0]
    if not weight:
        return []
    return [sum(1 for w in weight if w > c) for c in range(weight[0])]


# -- chains -------------------------------------------------------------------

SlotRef = tuple[int, int]  # (bracket, position) inside one factor


@dataclass(frozen=True)
class ChainAssignment:
    """``chains[factor][letter]`` lists chains; chain ``c`` holds the slot with upper index ``r`` at ``c[r-1]``."""

    chains: tuple[dict[str, tuple[tuple[SlotRef, ...], ...]], ...]

    def chain_of(self, factor: int) -> dict[SlotRef, tuple[str, int]]:
        out = {}
        for letter, chains in self.chains[factor].items():
            for ci, chain in enumerate(chains):
                for ref in chain:
                    out[ref] = (letter, ci)
        return out


def _chain_factor(f: Factor) -> dict[str, tuple[tuple[SlotRef, ...], ...]]:
    out = {}
    for letter in LETTERS:
        mult = f.multiplicities(letter)
        if not mult:
            continue
        heights = conjugate([mult.get(r, 0) for r in range(1, max(mult) + 1)])
        cells: list[list[Optional[SlotRef]]] = [[None] * h for h in heights]
        for b, p, s in f.slots():
            if s.letter != letter:
                continue
            for chain in cells:
                if len(chain) >= s.upper and chain[s.upper - 1] is None:
                    chain[s.upper - 1] = (b, p)
                    break
            else:  # pragma: no cover - excluded by validate
                raise SpecError("weight-order", f"no chain awaits {s}")
        out[letter] = tuple(tuple(c) for c in cells)
    return out


def chain_assign(spec: BracketSpec) -> ChainAssignment:
    """Greedy chain assignment in reading order (factor, bracket, position).

    An occurrence of letter ``x`` with upper index ``j`` fills position ``j`` of the
    lowest-numbered chain of ``x`` that is tall enough and still has it empty.
    """
    validate(spec)
    return ChainAssignment(tuple(_chain_factor(f) for f in spec.factors))


# -- expansion ----------------------------------------------------------------

def _bracket_assignments(segments: list[list[int]], n: int):
    """Orbit representatives of lower-index assignments for one bracket.

    ``segments`` groups the bracket positions belonging to one chain, each listed
    by increasing upper index.  Inside a segment the antisymmetrization already
    builds the minor, so only increasing fillings are enumerated.  Yields
    ``(values_by_position, sign)``.
    """
    size = sum(len(s) for s in segments)

    def rec(k, remaining, chosen):
        if k == len(segments):
            values = [0] * size
            for seg, vals in zip(segments, chosen):
                for pos, v in zip(seg, vals):
                    values[pos] = v
            yield values
            return
        for combo in itertools.combinations(remaining, len(segments[k])):
            rest = tuple(x for x in remaining if x not in combo)
            yield from rec(k + 1, rest, chosen + [combo])

    for values in rec(0, tuple(range(1, n + 1)), []):
        yield values, permutation_sign(values)


def _factor_segments(f: Factor, chains) -> list[list[list[int]]]:
    """Per bracket, positions grouped by chain, each group ordered by upper index."""
    per_bracket: list[dict] = [dict() for _ in f.brackets]
    for letter, cs in chains.items():
        for ci, chain in enumerate(cs):
            for b, p in chain:
                per_bracket[b].setdefault((letter, ci), []).append(p)
    return [[grp[k] for k in sorted(grp)] for grp in per_bracket]


def expand_factor_raw(f: Factor, n: int, chains) -> SparsePoly:
    """Determinant form of one factor (power ignored), before the sign convention."""
    segments = _factor_segments(f, chains)
    per_bracket = [list(_bracket_assignments(seg, n)) for seg in segments]
    acc: dict[Monomial, int] = {}
    for choice in itertools.product(*per_bracket):
        sign = prod(s for _, s in choice)
        term = _chain_monomial(chains, [v for v, _ in choice], n)
        if term is None:
            continue
        m, s = term
        acc[m] = acc.get(m, 0) + sign * s
    return SparsePoly(acc)


def _chain_monomial(chains, values_by_bracket, n):
    """Group the lower indexes of each chain into a determinant variable."""
    sign = 1
    variables = []
    for letter, cs in chains.items():
        sym = Symbol(letter)
        for chain in cs:
            raw = [values_by_bracket[b][p] for b, p in chain]
            s = normalize(n, raw)
            if s.sign == 0:
                return None
            sign *= s.sign
            variables.append(DetVar(sym, s.set))
    return Monomial.of(*variables), sign


def expand_factor_bruteforce(f: Factor, n: int, chains) -> SparsePoly:
    """Same as :func:`expand_factor_raw` via all ``n!`` permutations per bracket.

    Every orbit of the within-bracket chain stabilizer is visited ``|G|`` times;
    the sum is divided by ``|G|`` at the end.  Kept as an independent check.
    """
    segments = _factor_segments(f, chains)
    stab = prod(factorial(len(s)) for seg in segments for s in seg)
    perms = list(itertools.permutations(range(1, n + 1)))
    acc: dict[Monomial, Fraction] = {}
    for choice in itertools.product(perms, repeat=len(f.brackets)):
        sign = prod(permutation_sign(c) for c in choice)
        term = _chain_monomial(chains, [list(c) for c in choice], n)
        if term is None:
            continue
        m, s = term
        acc[m] = acc.get(m, 0) + Fraction(sign * s, stab)
    return SparsePoly(acc)


def identity_monomial(f: Factor, n: int, chains) -> Optional[Monomial]:
    """Determinant monomial of the identity lower-index assignment in every bracket."""
    term = _chain_monomial(chains, [list(range(1, n + 1)) for _ in f.brackets], n)
    return None if term is None else term[0]


@dataclass(frozen=True)
class ZRegistry:
    """Z-variables of one factor in canonical order with their integer coefficients."""

    factor: int
    power: int
    entries: tuple[ZVar, ...]
    values: dict = field(hash=False, compare=True)

    def to_json(self) -> list[dict]:
        return [{"zvar": str(z), "coeff": int(self.values[z])} for z in self.entries]


@dataclass(frozen=True)
class Expansion:
    spec: BracketSpec
    registries: tuple[ZRegistry, ...]
    zpoly: SparsePoly  # polynomial in ZVars, powers and 1/t! included
    detpoly: SparsePoly  # same object in determinant variables

    @property
    def is_zero(self) -> bool:
        return not self.detpoly

    def zvars(self) -> list[ZVar]:
        return [z for r in self.registries for z in r.entries]

    def z_value(self, z: ZVar) -> int:
        return self.registries[z.factor].values[z]


def z_to_det(z: ZVar) -> SparsePoly:
    return SparsePoly.monomial(z.monomial)


def has_repeated_slot(f: Factor) -> bool:
    """Some bracket holds the same (letter, upper) slot twice."""
    return any(len(set(br)) < len(br) for br in f.brackets)


def expand(spec: BracketSpec) -> Expansion:
    """Expand a spec into determinant monomials and Z-variables.

    Each factor is normalized so that its canonically smallest monomial has a
    positive coefficient.  A factor raised to ``t`` contributes ``(sum z Z)^t / t!``.
    A bracket with a repeated slot makes its factor vanish.
    """
    ca = chain_assign(spec)
    registries = []
    zpoly = SparsePoly.const(1)
    for fi, f in enumerate(spec.factors):
        # x^u_i x^u_j antisymmetrized in i, j vanishes before any grouping
        if has_repeated_slot(f):
            raw = SparsePoly()
        else:
            raw = expand_factor_raw(f, spec.n, ca.chains[fi])
        items = raw.items()
        if items and items[0][1] < 0:
            raw = -raw
            items = raw.items()
        entries = tuple(ZVar(fi, m) for m, _ in items)
        values = {z: int(c) for z, (_, c) in zip(entries, items)}
        registries.append(ZRegistry(fi, f.power, entries, values))
        linear = SparsePoly({Monomial.of(z): values[z] for z in entries})
        zpoly = zpoly * (linear ** f.power) * Fraction(1, factorial(f.power))
    detpoly = zpoly.map_variables(z_to_det)
    if not zpoly:
        log.warning("zero expansion for %s", render_spec(spec))
    return Expansion(spec, tuple(registries), zpoly, detpoly)


# -- support lattice ----------------------------------------------------------

@dataclass(frozen=True)
class SupportLattice:
    """``supp f = (kappa + B) ∩ octant`` in Z-exponent space, coordinates ``coords``."""

    coords: tuple[ZVar, ...]
    kappa: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]

    @functools.cached_property
    def echelon(self) -> list[list[int]]:
        return _hermite_rows(self.basis)

    def contains(self, point: Iterable[int]) -> bool:
        diff = [p - k for p, k in zip(point, self.kappa)]
        return in_integer_span(diff, self.basis, self.echelon)


def support_lattice(spec: BracketSpec, expansion: Optional[Expansion] = None) -> SupportLattice:
    """Shift ``kappa`` (identity-assignment monomial of each factor, to the power ``t``)
    and generators ``e_alpha - e_beta`` for Z-variables of a common factor."""
    ex = expansion if expansion is not None else expand(spec)
    ca = chain_assign(spec)
    coords = tuple(ex.zvars())
    pos = {z: i for i, z in enumerate(coords)}
    kappa = [0] * len(coords)
    basis = []
    for fi, (f, reg) in enumerate(zip(spec.factors, ex.registries)):
        if not reg.entries:
            continue
        ident = identity_monomial(f, spec.n, ca.chains[fi])
        base = ZVar(fi, ident) if ident is not None else None
        if base not in reg.values:
            base = reg.entries[0]
        kappa[pos[base]] += f.power
        for za, zb in itertools.combinations(reg.entries, 2):
            v = [0] * len(coords)
            v[pos[za]] += 1
            v[pos[zb]] -= 1
            basis.append(tuple(v))
    return SupportLattice(coords, tuple(kappa), tuple(basis))


def support_points(ex: Expansion) -> set[tuple[int, ...]]:
    coords = ex.zvars()
    pos = {z: i for i, z in enumerate(coords)}
    out = set()
    for m in ex.zpoly.terms:
        v = [0] * len(coords)
        for z, e in m:
            v[pos[z]] = e
        out.add(tuple(v))
    return out


def lattice_points_in_box(lat: SupportLattice, upper: Iterable[int]) -> set[tuple[int, ...]]:
    """All points of ``kappa + B`` with ``0 <= x_i <= upper_i``."""
    ranges = [range(u + 1) for u in upper]
    return {p for p in itertools.product(*ranges) if lat.contains(p)}


def _hermite_rows(vectors) -> list[list[int]]:
    """Integer row echelon basis of the lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    width = len(rows[0])
    out = []
    col = 0
    while rows and col < width:
        live = [r for r in rows if r[col] != 0]
        dead = [r for r in rows if r[col] == 0]
        if not live:
            col += 1
            continue
        # euclid on column ``col`` until one row remains nonzero there
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            pivot = live[0]
            nxt = [pivot]
            for r in live[1:]:
                q = r[col] // pivot[col]
                r = [x - q * y for x, y in zip(r, pivot)]
                (nxt if r[col] != 0 else dead).append(r)
            live = nxt
        out.append(live[0])
        rows = [r for r in dead if any(r)]
        col += 1
    return out


def in_integer_span(v, vectors, echelon=None) -> bool:
    v = list(v)
    for row in echelon if echelon is not None else _hermite_rows(vectors):
        col = next(i for i, x in enumerate(row) if x)
        if v[col] % row[col]:
            return False
        q = v[col] // row[col]
        v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


# -- slot manipulation --------------------------------------------------------

def swap_slots(spec: BracketSpec, factor: int, first: SlotRef, second: SlotRef) -> BracketSpec:
    """Exchange two slots of one factor (used to probe the sign property)."""
    f = spec.factors[factor]
    brackets = [list(br) for br in f.brackets]
    (b1, p1), (b2, p2) = first, second
    brackets[b1][p1], brackets[b2][p2] = brackets[b2][p2], brackets[b1][p1]
    nf = Factor(tuple(tuple(br) for br in brackets), f.power)
    factors = list(spec.factors)
    factors[factor] = nf
    return BracketSpec(spec.n, tuple(factors))
