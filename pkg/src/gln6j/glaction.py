"""gl(n) action on determinant and matrix-element variables.

``E_{i,j}`` acts on lower (column) indexes by the substitution ``j -> i`` and
on products by the Leibniz rule.  The semi-invariance checker built on top of
it is the correctness oracle for every bracket expansion in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .indexcore import normalize
from .polyalg import DetVar, MatrixVar, Monomial, SparsePoly, ZVar


class NotSemiInvariantInput(ValueError):
    pass


def _act_on_variable(i: int, j: int, v) -> SparsePoly:
    if isinstance(v, DetVar):
        if j not in v.index:
            return SparsePoly()
        raw = [i if x == j else x for x in v.index]
        s = normalize(v.index.n, raw)
        if s.sign == 0:
            return SparsePoly()
        return SparsePoly.var(DetVar(v.symbol, s.set), s.sign)
    if isinstance(v, MatrixVar):
        if v.col != j:
            return SparsePoly()
        return SparsePoly.var(MatrixVar(v.symbol, v.row, i, v.n))
    if isinstance(v, ZVar):
        raise TypeError("Z-variables carry no gl(n) action; map them to determinant form first")
    raise TypeError(f"unsupported variable {v!r}")


def act_root(i: int, j: int, p: SparsePoly) -> SparsePoly:
    """Apply ``E_{i,j}`` to ``p`` (``i == j`` gives the Cartan element)."""
    acc: dict[Monomial, object] = {}
    for m, c in p.terms.items():
        items = m.items
        for pos, (v, e) in enumerate(items):
            image = _act_on_variable(i, j, v)
            if not image:
                continue
            rest = items[:pos] + ((v, e - 1),) + items[pos + 1:]
            base = Monomial(rest)
            for mi, ci in image.terms.items():
                mm = base * mi
                acc[mm] = acc.get(mm, 0) + c * e * ci
    return SparsePoly(acc)


def rank_of(p: SparsePoly) -> int:
    ranks = set()
    for v in p.variables():
        if isinstance(v, DetVar):
            ranks.add(v.index.n)
        elif isinstance(v, MatrixVar):
            ranks.add(v.n)
        else:
            raise TypeError(f"no rank for variable {v!r}")
    if len(ranks) != 1:
        raise ValueError(f"polynomial does not have a single rank: {sorted(ranks)}")
    return ranks.pop()


def weight_of(m: Monomial, n: int) -> tuple[int, ...]:
    """Cartan weight: component ``i`` counts lower index ``i`` with multiplicity."""
    w = [0] * n
    for v, e in m:
        if isinstance(v, DetVar):
            v.index.check_rank(n)
            for x in v.index:
                w[x - 1] += e
        elif isinstance(v, MatrixVar):
            w[v.col - 1] += e
        else:
            raise TypeError(f"no weight for variable {v!r}")
    return tuple(w)


@dataclass(frozen=True)
class SemiInvariance:
    is_semi_invariant: bool
    weight: Optional[tuple[int, ...]]

    def to_json(self) -> dict:
        return {
            "is_semi_invariant": self.is_semi_invariant,
            "weight": list(self.weight) if self.weight is not None else None,
        }


def check_semi_invariant(p: SparsePoly, n: Optional[int] = None) -> SemiInvariance:
    """All ``E_{i,j}``, ``i != j``, kill ``p`` and every monomial has one common weight."""
    if not p:
        raise NotSemiInvariantInput("zero polynomial has no weight")
    if n is None:
        n = rank_of(p)
    weights = {weight_of(m, n) for m in p.terms}
    if len(weights) != 1:
        return SemiInvariance(False, None)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and act_root(i, j, p):
                return SemiInvariance(False, None)
    return SemiInvariance(True, weights.pop())
