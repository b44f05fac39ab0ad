"""Formulas of dyadic deontic logic E, their ASCII syntax and static measures.

The core language has atoms, ``~``, ``->``, ``[]`` and ``O(B/A)``.  ``Bet`` is a
meta-level modality used only inside the calculus; the parser rejects it
unless asked otherwise.  Derived connectives are desugared while parsing:

    A & B    ~(A -> ~B)
    A | B    ~A -> B
    A <-> B  (A -> B) & (B -> A)
    <>A      ~[]~A
    true     p0 -> p0
    false    ~(p0 -> p0)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

__all__ = [
    "Formula", "Atom", "Neg", "Impl", "Box", "Oblig", "Bet",
    "ParseError", "BetNotAllowed",
    "parse", "render", "sub_plus", "subformulas", "complexity", "size", "atoms",
    "is_bet_free", "TOP", "BOTTOM", "RESERVED_ATOM", "conj", "disj", "conj_all", "disj_all",
]


class Formula:
    """Base class of the formula tree.  Instances are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


def _cached_hash(self) -> int:
    return self._hash


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom name must be non-empty")
        object.__setattr__(self, "_hash", hash(("atom", self.name)))

    __hash__ = _cached_hash

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Neg(Formula):
    child: Formula
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("neg", self.child)))

    __hash__ = _cached_hash

    def __repr__(self) -> str:
        return f"Neg({self.child!r})"


@dataclass(frozen=True, repr=False)
class Impl(Formula):
    left: Formula
    right: Formula
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("impl", self.left, self.right)))

    __hash__ = _cached_hash

    def __repr__(self) -> str:
        return f"Impl({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Box(Formula):
    child: Formula
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("box", self.child)))

    __hash__ = _cached_hash

    def __repr__(self) -> str:
        return f"Box({self.child!r})"


@dataclass(frozen=True, repr=False)
class Oblig(Formula):
    """``O(consequent/antecedent)``: the consequent is obligatory given the antecedent."""

    consequent: Formula
    antecedent: Formula
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("oblig", self.consequent, self.antecedent)))

    __hash__ = _cached_hash

    def __repr__(self) -> str:
        return f"Oblig({self.consequent!r}, {self.antecedent!r})"


@dataclass(frozen=True, repr=False)
class Bet(Formula):
    child: Formula
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("bet", self.child)))

    __hash__ = _cached_hash

    def __repr__(self) -> str:
        return f"Bet({self.child!r})"


RESERVED_ATOM = "p0"
TOP: Formula = Impl(Atom(RESERVED_ATOM), Atom(RESERVED_ATOM))
BOTTOM: Formula = Neg(TOP)


def conj(a: Formula, b: Formula) -> Formula:
    return Neg(Impl(a, Neg(b)))


def disj(a: Formula, b: Formula) -> Formula:
    return Impl(Neg(a), b)


def conj_all(fs) -> Formula:
    fs = list(fs)
    if not fs:
        return TOP
    out = fs[0]
    for f in fs[1:]:
        out = conj(out, f)
    return out


def disj_all(fs) -> Formula:
    fs = list(fs)
    if not fs:
        return BOTTOM
    out = fs[0]
    for f in fs[1:]:
        out = disj(out, f)
    return out


# ---------------------------------------------------------------- parsing

class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class BetNotAllowed(ParseError):
    pass


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|\[\]|<>|[~&|()/])|(?P<word>[A-Za-z][A-Za-z0-9_]*)|(?P<bad>\S))"
)
_ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")

# binding power, right-associative?
_BINARY = {
    "&": (4, False),
    "|": (3, False),
    "->": (2, True),
    "<->": (1, True),
}


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group("bad") is not None:
            raise ParseError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        kind = "op" if m.group("op") is not None else "word"
        tokens.append((m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, allow_bet: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_bet = allow_bet

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def advance(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            found = self.peek()
            raise ParseError(f"expected {tok!r}, found {found!r}" if found else f"expected {tok!r}", self.pos())
        self.advance()

    def formula(self, min_bp: int = 0) -> Formula:
        left = self.unary()
        while True:
            op = self.peek()
            if op not in _BINARY:
                return left
            bp, right_assoc = _BINARY[op]
            if bp < min_bp:
                return left
            self.advance()
            right = self.formula(bp if right_assoc else bp + 1)
            left = _combine(op, left, right)

    def unary(self) -> Formula:
        start = self.pos()
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", start)
        if tok == "~":
            self.advance()
            return Neg(self.unary())
        if tok == "[]":
            self.advance()
            return Box(self.unary())
        if tok == "<>":
            self.advance()
            return Neg(Box(Neg(self.unary())))
        if tok == "Bet":
            if not self.allow_bet:
                raise BetNotAllowed("Bet not allowed", start)
            self.advance()
            return Bet(self.unary())
        if tok == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if tok == "O":
            self.advance()
            self.expect("(")
            consequent = self.formula()
            self.expect("/")
            antecedent = self.formula()
            self.expect(")")
            return Oblig(consequent, antecedent)
        if tok == "true":
            self.advance()
            return TOP
        if tok == "false":
            self.advance()
            return BOTTOM
        if _ATOM_RE.match(tok):
            self.advance()
            return Atom(tok)
        raise ParseError(f"unexpected token {tok!r}", start)


def _combine(op: str, a: Formula, b: Formula) -> Formula:
    if op == "->":
        return Impl(a, b)
    if op == "&":
        return conj(a, b)
    if op == "|":
        return disj(a, b)
    return conj(Impl(a, b), Impl(b, a))


def parse(text: str, allow_bet: bool = False) -> Formula:
    """Parse ASCII syntax into a core formula tree.

    Raises :class:`ParseError` (with a character position) on bad input and
    :class:`BetNotAllowed` if ``Bet`` occurs while ``allow_bet`` is off.
    """
    if not text or not text.strip():
        raise ParseError("empty formula", 0)
    p = _Parser(text, allow_bet)
    f = p.formula()
    if p.peek() is not None:
        raise ParseError(f"unexpected token {p.peek()!r}", p.pos())
    return f


# ---------------------------------------------------------------- rendering

def render(f: Formula) -> str:
    """ASCII rendering that parses back (with ``allow_bet``) to the same tree.

    Only ``true``/``false`` are re-sugared; everything else is printed in the core
    connectives.
    """
    return _render(f, 0)


def _render(f: Formula, ctx: int) -> str:
    # ctx 0: top level / right operand of ->, 1: left operand of ->, 2: operand of a unary
    if f == TOP:
        return "true"
    if f == BOTTOM:
        return "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Neg):
        return "~" + _render(f.child, 2)
    if isinstance(f, Box):
        return "[]" + _render(f.child, 2)
    if isinstance(f, Bet):
        return "Bet " + _render(f.child, 2)
    if isinstance(f, Oblig):
        return f"O({_render(f.consequent, 0)}/{_render(f.antecedent, 0)})"
    if isinstance(f, Impl):
        s = f"{_render(f.left, 1)} -> {_render(f.right, 0)}"
        return f"({s})" if ctx else s
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------- measures

def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Neg, Box, Bet)):
        return (f.child,)
    if isinstance(f, Impl):
        return (f.left, f.right)
    if isinstance(f, Oblig):
        return (f.consequent, f.antecedent)
    return ()


def _walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def subformulas(f: Formula) -> frozenset[Formula]:
    return frozenset(_walk(f))


def sub_plus(f: Formula) -> frozenset[Formula]:
    """Subformulas of ``f`` plus ``Bet ~C`` for every obligation ``O(D/C)`` in it."""
    subs = subformulas(f)
    return subs | {Bet(Neg(g.antecedent)) for g in subs if isinstance(g, Oblig)}


def atoms(f: Formula) -> list[str]:
    """Atom names in order of first occurrence."""
    seen: dict[str, None] = {}
    for g in _walk(f):
        if isinstance(g, Atom):
            seen.setdefault(g.name)
    return list(seen)


def size(f: Formula) -> int:
    """Symbol count: one per atom occurrence and one per connective."""
    return sum(1 for _ in _walk(f))


def complexity(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, (Neg, Box, Bet)):
        return complexity(f.child) + 1
    if isinstance(f, Impl):
        return complexity(f.left) + complexity(f.right) + 1
    if isinstance(f, Oblig):
        return complexity(f.consequent) + complexity(f.antecedent) + 3
    raise TypeError(f"not a formula: {f!r}")


def is_bet_free(f: Formula) -> bool:
    return not any(isinstance(g, Bet) for g in _walk(f))
