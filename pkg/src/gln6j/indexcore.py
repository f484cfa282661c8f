"""Index sets, tensor-slot symbols and the sign conventions for determinant variables.

A determinant variable ``a_X`` is antisymmetric in its subscript, so every raw
list of lower indexes is rewritten as a strictly increasing ``IndexSet`` and a
sign.  Repeated indexes kill the variable (sign 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

LETTERS = ("a", "b", "c")
FAMILY_LETTER = "A"


class IndexSetError(ValueError):
    """Raised for out-of-range or rank-inconsistent indexes."""


def permutation_sign(seq: Iterable[int]) -> int:
    """Parity of the permutation that sorts ``seq``; 0 if ``seq`` has repeats."""
    items = list(seq)
    if len(set(items)) != len(items):
        return 0
    sign = 1
    # count inversions by cycle decomposition of the sorting permutation
    order = sorted(range(len(items)), key=items.__getitem__)
    seen = [False] * len(items)
    for start in range(len(items)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = order[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True, order=True)
class IndexSet:
    """Strictly increasing subset of ``{1..n}`` carrying its rank ``n``."""

    n: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise IndexSetError(f"rank must be positive, got {self.n}")
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if not 1 <= len(els) <= self.n:
            raise IndexSetError(f"index set size {len(els)} outside 1..{self.n}")
        for e in els:
            if not 1 <= e <= self.n:
                raise IndexSetError(f"index {e} outside 1..{self.n}")
        if any(x >= y for x, y in zip(els, els[1:])):
            raise IndexSetError(f"index set {els} is not strictly increasing")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, i) -> bool:
        return i in self.elements

    def __str__(self) -> str:
        return ",".join(map(str, self.elements))

    def check_rank(self, n: int) -> None:
        if n != self.n:
            raise IndexSetError(f"rank mismatch: index set of rank {self.n} used at rank {n}")


@dataclass(frozen=True)
class SignedIndexSet:
    """Result of normalizing a raw index list: ``set`` is None iff ``sign`` is 0."""

    set: Optional[IndexSet]
    sign: int


def normalize(n: int, raw: Iterable[int]) -> SignedIndexSet:
    """Sort a raw lower-index list, returning the set and the sorting parity.

    >>> normalize(4, [2, 1])
    SignedIndexSet(set=IndexSet(n=4, elements=(1, 2)), sign=-1)
    """
    raw = list(raw)
    for e in raw:
        if not isinstance(e, int) or not 1 <= e <= n:
            raise IndexSetError(f"index {e!r} outside 1..{n}")
    sign = permutation_sign(raw)
    if sign == 0:
        return SignedIndexSet(None, 0)
    return SignedIndexSet(IndexSet(n, tuple(sorted(raw))), sign)


def complement(s: IndexSet) -> IndexSet:
    rest = tuple(i for i in range(1, s.n + 1) if i not in s.elements)
    if not rest:
        raise IndexSetError("complement of the full set is empty")
    return IndexSet(s.n, rest)


@dataclass(frozen=True, order=True)
class Symbol:
    """Tensor-slot letter, optionally tagged with a 6j variable family 1..6.

    Family variables ``A^j`` forget the letter they came from, so a tagged
    symbol uses the letter ``"A"``.
    """

    letter: str
    family: int = 0

    def __post_init__(self):
        if self.family:
            if not 1 <= self.family <= 6:
                raise ValueError(f"family tag {self.family} outside 1..6")
            if self.letter != FAMILY_LETTER:
                raise ValueError("family symbols use the letter 'A'")
        elif self.letter not in LETTERS:
            raise ValueError(f"unknown letter {self.letter!r}")

    @classmethod
    def fam(cls, j: int) -> "Symbol":
        return cls(FAMILY_LETTER, j)

    def __str__(self) -> str:
        return f"A{self.family}" if self.family else self.letter
