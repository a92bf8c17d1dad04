"""K-formulae: AST, parser, negation normal form and rendering.

Grammar (``&`` binds tighter than ``|``, unary operators tightest, binary
operators associate to the left)::

    F ::= F '|' T | T
    T ::= T '&' U | U
    U ::= '~' U | '[]' U | '<>' U | '(' F ')' | atom
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

ATOM_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Box:
    child: "Formula"


@dataclass(frozen=True)
class Dia:
    child: "Formula"


Formula = Union[Atom, Not, And, Or, Box, Dia]


class ParseError(ValueError):
    """Syntax error with the byte offset where parsing failed."""

    def __init__(self, text: str, offset: int, expected):
        self.text = text
        self.offset = offset
        self.expected = tuple(sorted(expected))
        got = text[offset:offset + 8] or "end of input"
        byte_offset = len(text[:offset].encode("utf-8"))
        self.byte_offset = byte_offset
        super().__init__(
            f"syntax error at offset {byte_offset}: expected one of "
            f"{', '.join(self.expected)}; got {got!r}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, tok: str) -> bool:
        self.skip()
        return self.text.startswith(tok, self.pos)

    def eat(self, tok: str) -> bool:
        if self.peek(tok):
            self.pos += len(tok)
            return True
        return False

    def error(self, expected):
        self.skip()
        raise ParseError(self.text, self.pos, expected)

    def parse(self) -> Formula:
        f = self.disjunction()
        self.skip()
        if self.pos != len(self.text):
            self.error({"'&'", "'|'", "end of input"})
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.eat("|"):
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.eat("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.eat("~"):
            return Not(self.unary())
        if self.eat("[]"):
            return Box(self.unary())
        if self.eat("<>"):
            return Dia(self.unary())
        if self.eat("("):
            f = self.disjunction()
            if not self.eat(")"):
                self.error({"')'", "'&'", "'|'"})
            return f
        self.skip()
        m = ATOM_RE.match(self.text, self.pos)
        if m is None:
            self.error({"atom", "'~'", "'[]'", "'<>'", "'('"})
        self.pos = m.end()
        return Atom(m.group())


def parse(text: str) -> Formula:
    """Parse *text* into a formula; general negation is kept as written."""
    return _Parser(text).parse()


def to_nnf(f: Formula) -> Formula:
    """Push negations down to the atoms (de Morgan and modal duality)."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, And):
        return And(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Or):
        return Or(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Box):
        return Box(to_nnf(f.child))
    if isinstance(f, Dia):
        return Dia(to_nnf(f.child))
    g = f.child
    if isinstance(g, Atom):
        return f
    if isinstance(g, Not):
        return to_nnf(g.child)
    if isinstance(g, And):
        return Or(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
    if isinstance(g, Or):
        return And(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
    if isinstance(g, Box):
        return Dia(to_nnf(Not(g.child)))
    return Box(to_nnf(Not(g.child)))


def is_nnf(f: Formula) -> bool:
    if isinstance(f, Atom):
        return True
    if isinstance(f, Not):
        return isinstance(f.child, Atom)
    return all(is_nnf(c) for c in children(f))


def children(f: Formula) -> tuple:
    if isinstance(f, (And, Or)):
        return (f.left, f.right)
    if isinstance(f, (Not, Box, Dia)):
        return (f.child,)
    return ()


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in children(f))


def depth(f: Formula) -> int:
    """Height of the syntax tree; a bare atom has depth 0."""
    cs = children(f)
    return 1 + max(depth(c) for c in cs) if cs else 0


def modal_depth(f: Formula) -> int:
    cs = children(f)
    inner = max((modal_depth(c) for c in cs), default=0)
    return inner + 1 if isinstance(f, (Box, Dia)) else inner


def atoms(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    out: set[str] = set()
    for c in children(f):
        out |= atoms(c)
    return out


def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.child, Atom))


_PREC = {Or: 1, And: 2}


def render(f: Formula) -> str:
    """Render with the minimal parentheses needed for ``parse`` to round-trip."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "~" + _render_operand(f.child)
    if isinstance(f, Box):
        return "[]" + _render_operand(f.child)
    if isinstance(f, Dia):
        return "<>" + _render_operand(f.child)
    op = " & " if isinstance(f, And) else " | "
    prec = _PREC[type(f)]
    left = render(f.left)
    if type(f.left) in _PREC and _PREC[type(f.left)] < prec:
        left = f"({left})"
    right = render(f.right)
    # left associativity: a right operand of equal precedence needs parentheses
    if type(f.right) in _PREC and _PREC[type(f.right)] <= prec:
        right = f"({right})"
    return left + op + right


def _render_operand(f: Formula) -> str:
    s = render(f)
    return f"({s})" if isinstance(f, (And, Or)) else s
