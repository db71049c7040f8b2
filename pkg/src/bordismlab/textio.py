"""Plain-text formats for representation polynomials.

Grammar (whitespace insignificant, ``#`` starts a comment)::

    polynomial := monomial ('+' monomial)* | '0'
    monomial   := factor ('*' factor)*
    factor     := 'r' digits ('^' posint)?

The digits of a character token are distinct, strictly ascending and at
most ``k``.
"""

from __future__ import annotations

from .gf2core import char_from_indices, check_rank
from .repalgebra import GkRep, RepPolynomial


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines() or [""], start=1):
        line = raw.split("#", 1)[0]
        col = 0
        while col < len(line):
            ch = line[col]
            if ch.isspace():
                col += 1
                continue
            start = col
            if ch in "+*^":
                yield ch, ch, lineno, start + 1
                col += 1
            elif ch.isdigit():
                while col < len(line) and line[col].isdigit():
                    col += 1
                yield "num", line[start:col], lineno, start + 1
            elif ch == "r":
                col += 1
                while col < len(line) and line[col].isdigit():
                    col += 1
                yield "char", line[start:col], lineno, start + 1
            else:
                raise ParseError(f"unexpected character {ch!r}", lineno, start + 1)
    yield "end", "", len(text.splitlines()) or 1, 0


def parse_char(token: str, k: int, line: int, col: int) -> int:
    digits = token[1:]
    if not digits:
        raise ParseError("character token needs digits", line, col)
    idx = [int(d) for d in digits]
    for d in idx:
        if d == 0 or d > k:
            raise ParseError(f"generator index {d} outside 1..{k}", line, col)
    if len(set(idx)) != len(idx):
        raise ParseError(f"duplicate digit in {token!r}", line, col)
    if idx != sorted(idx):
        raise ParseError(f"digits of {token!r} must ascend", line, col)
    return char_from_indices(idx)


def parse_poly(text: str, k: int) -> RepPolynomial:
    """Parse polynomial text; duplicate monomials cancel in pairs."""
    check_rank(k)
    toks = list(_tokens(text))
    pos = 0

    def peek():
        return toks[pos]

    def take(kind: str):
        nonlocal pos
        t = toks[pos]
        if t[0] != kind:
            found = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected {kind}, found {found}", t[2], t[3])
        pos += 1
        return t

    if peek()[0] == "num" and peek()[1] == "0" and toks[1][0] == "end":
        return RepPolynomial.zero(k, 0)
    monomials: list[tuple[GkRep, int, int]] = []
    while True:
        factors: list[int] = []
        first = peek()
        while True:
            _, tok, line, col = take("char")
            c = parse_char(tok, k, line, col)
            power = 1
            if peek()[0] == "^":
                take("^")
                _, num, nl, nc = take("num")
                power = int(num)
                if power < 1:
                    raise ParseError("exponent must be positive", nl, nc)
            factors.extend([c] * power)
            if peek()[0] != "*":
                break
            take("*")
        monomials.append((GkRep.of(k, factors), first[2], first[3]))
        if peek()[0] == "+":
            take("+")
            continue
        t = peek()
        if t[0] != "end":
            raise ParseError(f"unexpected {t[1]!r}", t[2], t[3])
        break
    n = monomials[0][0].n
    for rep, line, col in monomials:
        if rep.n != n:
            raise ParseError(f"monomial has dimension {rep.n}, expected {n}", line, col)
    return RepPolynomial.from_reps(k, (m[0] for m in monomials), n)


def print_poly(p: RepPolynomial) -> str:
    return str(p)


def parse_named_polys(text: str, k: int) -> dict[str, RepPolynomial]:
    """Parse ``name: polynomial`` lines."""
    out: dict[str, RepPolynomial] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'name: polynomial'", lineno, 1)
        name, body = line.split(":", 1)
        try:
            out[name.strip()] = parse_poly(body, k)
        except ParseError as e:
            offset = len(name) + 1
            raise ParseError(str(e).split(": ", 1)[1], lineno, e.column + offset) from None
    return out
