"""Propositional-logic formulas: AST, parser, canonical printer, evaluation.

Grammar (ASCII, whitespace-insensitive):

    atoms  A-Z
    ~  not        (binds tightest)
    &  and        (left-associative)
    |  or         (left-associative)
    -> implies    (right-associative)
    <-> iff       (right-associative, binds loosest)
    ( )

``render`` produces the unique minimally-parenthesized string for a tree and
``parse(render(f)) == f`` for every formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Union


class MalformedFormula(ValueError):
    """A formula string that cannot be lexed or parsed; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Atom:
    letter: str


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
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or, Implies, Iff]

_PRECEDENCE = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, Atom: 6}
_CONNECTIVE = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


@lru_cache(maxsize=1 << 17)
def render(f: Formula) -> str:
    """Canonical minimal-parenthesization string for a formula tree."""
    if isinstance(f, Atom):
        return f.letter
    if isinstance(f, Not):
        return "~" + _wrap(f.child, 5)
    prec = _PRECEDENCE[type(f)]
    if isinstance(f, (And, Or)):
        # left-associative: the right operand needs strictly tighter binding
        return _wrap(f.left, prec) + _CONNECTIVE[type(f)] + _wrap(f.right, prec + 1)
    # -> and <-> are right-associative
    return _wrap(f.left, prec + 1) + _CONNECTIVE[type(f)] + _wrap(f.right, prec)


def _wrap(f: Formula, min_prec: int) -> str:
    s = render(f)
    if _PRECEDENCE[type(f)] < min_prec:
        return "(" + s + ")"
    return s


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, int]] = []
        self._scan()

    def _scan(self) -> None:
        text = self.text
        i = 0
        n = len(text)
        while i < n:
            ch = text[i]
            if ch in " \t\r\n":
                i += 1
                continue
            if "A" <= ch <= "Z":
                self.tokens.append((ch, i))
                i += 1
            elif ch in "~&|()":
                self.tokens.append((ch, i))
                i += 1
            elif ch == "-":
                if text[i : i + 2] == "->":
                    self.tokens.append(("->", i))
                    i += 2
                else:
                    raise MalformedFormula("expected '->'", i)
            elif ch == "<":
                if text[i : i + 3] == "<->":
                    self.tokens.append(("<->", i))
                    i += 3
                else:
                    raise MalformedFormula("expected '<->'", i)
            else:
                raise MalformedFormula(f"unexpected character {ch!r}", i)
        self.tokens.append(("", n))  # end marker


class _Parser:
    def __init__(self, text: str):
        self.tokens = _Lexer(text).tokens
        self.idx = 0

    def peek(self) -> str:
        return self.tokens[self.idx][0]

    def offset(self) -> int:
        return self.tokens[self.idx][1]

    def next(self) -> str:
        tok = self.tokens[self.idx][0]
        self.idx += 1
        return tok

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek() != "":
            raise MalformedFormula(f"unexpected {self.peek()!r}", self.offset())
        return f

    def iff(self) -> Formula:
        left = self.implies()
        if self.peek() == "<->":
            self.next()
            return Iff(left, self.iff())
        return left

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.next()
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek() == "|":
            self.next()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek() == "&":
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.next()
            return Not(self.unary())
        if tok == "(":
            open_at = self.offset()
            self.next()
            inner = self.iff()
            if self.peek() != ")":
                raise MalformedFormula("unbalanced '('", open_at)
            self.next()
            return inner
        if len(tok) == 1 and "A" <= tok <= "Z":
            self.next()
            return Atom(tok)
        if tok == "":
            raise MalformedFormula("unexpected end of input", self.offset())
        raise MalformedFormula(f"unexpected {tok!r}", self.offset())


def parse(text: str) -> Formula:
    """Parse an ASCII formula string into its unique AST.

    Raises MalformedFormula (with byte offset) on any lex or parse failure,
    including the empty string.
    """
    if not text.strip():
        raise MalformedFormula("empty formula", 0)
    return _Parser(text).parse()


def atoms(f: Formula) -> frozenset[str]:
    """Set of atom letters occurring in the formula."""
    if isinstance(f, Atom):
        return frozenset((f.letter,))
    if isinstance(f, Not):
        return atoms(f.child)
    return atoms(f.left) | atoms(f.right)


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    """Truth value of the formula under a truth assignment of its atoms."""
    if isinstance(f, Atom):
        return assignment[f.letter]
    if isinstance(f, Not):
        return not evaluate(f.child, assignment)
    if isinstance(f, And):
        return evaluate(f.left, assignment) and evaluate(f.right, assignment)
    if isinstance(f, Or):
        return evaluate(f.left, assignment) or evaluate(f.right, assignment)
    if isinstance(f, Implies):
        return (not evaluate(f.left, assignment)) or evaluate(f.right, assignment)
    return evaluate(f.left, assignment) == evaluate(f.right, assignment)


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformula occurrences, root first (positions, not unique trees)."""
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.child)
    elif not isinstance(f, Atom):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
