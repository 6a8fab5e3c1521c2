"""Propositional formulas over atoms, ``true``/``false``, negation, disjunction
and conjunction.

Concrete syntax::

    or_expr   := and_expr ('|' and_expr)*
    and_expr  := unary ('&' unary)*
    unary     := ('!' | '~') unary | primary
    primary   := ATOM | 'true' | 'false' | '(' or_expr ')'

Both binary operators are left-associative. ``render`` emits the minimal
parenthesization under these rules, and ``canonical_key`` (rendered length,
then the rendered text) is the total order used for every deterministic
tie-break in the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "Formula", "Atom", "ConstTrue", "ConstFalse", "Not", "Or", "And",
    "TRUE", "FALSE", "ParseError", "parse", "render", "atoms",
    "canonical_key", "size", "depth", "conjoin", "disjoin",
]

ATOM_RE = re.compile(r"[a-z][a-z0-9_]*")
KEYWORDS = frozenset({"true", "false"})

# precedence classes; a child is parenthesized when its class is below the
# minimum its position demands
PREC_OR, PREC_AND, PREC_PRIMARY = 1, 2, 3


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return render(self)

    def __invert__(self) -> "Not":
        return Not(self)

    def __or__(self, other: "Formula") -> "Or":
        return Or(self, other)

    def __and__(self, other: "Formula") -> "And":
        return And(self, other)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not ATOM_RE.fullmatch(self.name) or self.name in KEYWORDS:
            raise ValueError(f"invalid atom name {self.name!r}")

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class ConstTrue(Formula):
    def __repr__(self):
        return "ConstTrue()"


@dataclass(frozen=True, repr=False)
class ConstFalse(Formula):
    def __repr__(self):
        return "ConstFalse()"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    child: Formula

    def __repr__(self):
        return f"Not({self.child!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


TRUE = ConstTrue()
FALSE = ConstFalse()


class ParseError(ValueError):
    """Malformed formula text; ``position`` is a 0-based character offset."""

    def __init__(self, text: str, position: int, expected: str):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(f"at position {position}: expected {expected} in {text!r}")


_TOKEN_RE = re.compile(r"\s*(?:([a-z][a-z0-9_]*)|([!~&|()]))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(text, pos, "atom, constant, operator or parenthesis")
        start = m.start(1) if m.group(1) else m.start(2)
        tokens.append((m.group(1) or m.group(2), start))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def where(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.or_expr()
        if self.peek() is not None:
            raise ParseError(self.text, self.where(), "'|', '&' or end of input")
        return f

    def or_expr(self) -> Formula:
        f = self.and_expr()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.and_expr())
        return f

    def and_expr(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.peek() in ("!", "~"):
            self.take()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok == "(":
            self.take()
            f = self.or_expr()
            if self.peek() != ")":
                raise ParseError(self.text, self.where(), "')'")
            self.take()
            return f
        if tok == "true":
            self.take()
            return TRUE
        if tok == "false":
            self.take()
            return FALSE
        if tok is not None and ATOM_RE.fullmatch(tok):
            self.take()
            return Atom(tok)
        raise ParseError(self.text, self.where(), "atom, constant, negation or '('")


def parse(text: str) -> Formula:
    """Parse one formula; raises ParseError with the offending offset."""
    return _Parser(text).parse()


def precedence(f: Formula) -> int:
    if isinstance(f, Or):
        return PREC_OR
    if isinstance(f, And):
        return PREC_AND
    return PREC_PRIMARY


def wrap(text: str, prec: int, need: int) -> str:
    return f"({text})" if prec < need else text


def render(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, ConstTrue):
        return "true"
    if isinstance(f, ConstFalse):
        return "false"
    if isinstance(f, Not):
        return "!" + wrap(render(f.child), precedence(f.child), PREC_PRIMARY)
    if isinstance(f, Or):
        return (wrap(render(f.left), precedence(f.left), PREC_OR) + " | "
                + wrap(render(f.right), precedence(f.right), PREC_AND))
    if isinstance(f, And):
        return (wrap(render(f.left), precedence(f.left), PREC_AND) + " & "
                + wrap(render(f.right), precedence(f.right), PREC_PRIMARY))
    raise TypeError(f"not a formula: {f!r}")


def canonical_key(f: Formula | str) -> tuple[int, str]:
    text = f if isinstance(f, str) else render(f)
    return (len(text), text)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.child)
    elif isinstance(f, (Or, And)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def depth(f: Formula) -> int:
    if isinstance(f, Not):
        return 1 + depth(f.child)
    if isinstance(f, (Or, And)):
        return 1 + max(depth(f.left), depth(f.right))
    return 1


def disjoin(formulas) -> Formula:
    """Left-associated disjunction ``((f1 | f2) | f3) | ...``."""
    it = iter(formulas)
    out = next(it)
    for f in it:
        out = Or(out, f)
    return out


def conjoin(formulas) -> Formula:
    it = iter(formulas)
    out = next(it)
    for f in it:
        out = And(out, f)
    return out


def read_kb(text: str) -> list[Formula]:
    """One formula per line; ``#`` starts a comment, blank lines are skipped."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse(line))
    return out
