"""Parser for bracket expressions such as ``((a1 a2 a3 b1)(b2 c1 c2 c3))^2``.

Grammar::

    invariant := factor+
    factor    := '(' bracket+ ')' ['^' INT]
    bracket   := '(' slot+ ')'
    slot      := LETTER INT          LETTER in {a, b, c}

Whitespace separates slots and is otherwise ignored.  Matrix-element monomials
for the overlay command use ``a^1_2 a^2_3`` (upper index, then lower index).
"""

from __future__ import annotations

import re

from .indexcore import Symbol
from .polyalg import MatrixVar, Monomial
from .seminv import BracketSpec, Factor, Slot, validate


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<open>\()|(?P<close>\))|(?P<caret>\^)|(?P<int>\d+)|(?P<slot>[abc]\d+)|(?P<bad>\S))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        if kind is None:
            break
        start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", start)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def parse_expr(text: str, n: int, check: bool = True) -> BracketSpec:
    """Parse a bracket expression at rank ``n``; validates unless ``check`` is False."""
    if not text.strip():
        raise ParseError("empty expression", 0)
    toks = _tokens(text)
    i = 0

    def expect(kind):
        nonlocal i
        k, v, p = toks[i]
        if k != kind:
            what = "end of input" if k == "end" else repr(v)
            raise ParseError(f"expected {kind!r}, found {what}", p)
        i += 1
        return v

    factors = []
    while toks[i][0] != "end":
        expect("open")
        brackets = []
        while toks[i][0] == "open":
            i += 1
            slots = []
            while toks[i][0] == "slot":
                v = toks[i][1]
                slots.append(Slot(v[0], int(v[1:])))
                i += 1
            if not slots:
                raise ParseError("empty bracket", toks[i][2])
            expect("close")
            brackets.append(tuple(slots))
        if not brackets:
            raise ParseError("factor without brackets", toks[i][2])
        expect("close")
        power = 1
        if toks[i][0] == "caret":
            i += 1
            power = int(expect("int"))
        factors.append(Factor(tuple(brackets), power))
    spec = BracketSpec(n, tuple(factors))
    if check:
        validate(spec)
    return spec


_MATRIX = re.compile(r"([abc])\^(\d+)_(\d+)(?:\*\*(\d+))?")


def parse_matrix_monomial(text: str, n: int) -> Monomial:
    """``a^1_1 a^1_2 a^2_3`` -> product of matrix elements (``**k`` for powers)."""
    items = []
    pos = 0
    for chunk in re.split(r"[\s*]+(?=[abc]\^)", text.strip()):
        m = _MATRIX.fullmatch(chunk.strip())
        if m is None:
            raise ParseError(f"bad matrix element {chunk!r}", text.find(chunk, pos))
        pos += len(chunk)
        letter, row, col, exp = m.groups()
        items.append((MatrixVar(Symbol(letter), int(row), int(col), n), int(exp or 1)))
    return Monomial(items)
