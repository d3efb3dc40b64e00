"""Terms over the signature {m, box, constants}, with parser and printer.

Concrete syntax::

    x0, x1, ...          variables
    top, bot1, ...       constants declared by the signature
    m(s, t, u)           the ternary primitive
    box(s)               the unary modal operator (only if the signature has it)
    s | t                join sugar, expands to m(s, s, t); left associative

Printing always produces the canonical form: no spaces, and every term whose
first two m-arguments coincide is printed as a join.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "Signature", "PLAIN", "Var", "Const", "M", "Box", "Term",
    "FormulaSyntaxError", "var", "join", "parse_formula", "format_term",
    "build_mn", "substitute", "variables_of", "constants_of", "depth",
    "subterms", "is_join", "formulas_up_to",
]


@dataclass(frozen=True)
class Signature:
    constants: tuple[str, ...] = ()
    has_box: bool = False

    def __post_init__(self):
        names = tuple(self.constants)
        object.__setattr__(self, "constants", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate constant names in {names}")
        for name in names:
            if name in _RESERVED or _VAR_RE.fullmatch(name) or not _IDENT_RE.fullmatch(name):
                raise ValueError(f"illegal constant name {name!r}")

    def extend(self, constants: Iterable[str] = (), has_box: bool = False) -> "Signature":
        merged = list(self.constants)
        merged += [c for c in constants if c not in merged]
        return Signature(tuple(merged), self.has_box or has_box)


_RESERVED = frozenset({"m", "box"})
_VAR_RE = re.compile(r"x(0|[1-9][0-9]*)")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

PLAIN = Signature()


@dataclass(frozen=True, slots=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True, slots=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class M:
    a: "Term"
    b: "Term"
    c: "Term"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # terms are used as dictionary keys during proof search; cache the hash
        object.__setattr__(self, "_hash", hash((self.a, self.b, self.c)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True, slots=True)
class Box:
    a: "Term"

    def __str__(self):
        return format_term(self)


Term = Union[Var, Const, M, Box]


def var(i: int) -> Var:
    return Var(i)


def join(s: Term, t: Term) -> M:
    return M(s, s, t)


def is_join(t: Term) -> bool:
    return isinstance(t, M) and t.a == t.b


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.message = message
        self.text = text
        self.pos = pos


_TOKEN_RE = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),|]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        mt = _TOKEN_RE.match(text, pos)
        if not mt:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = mt.start("ident") if mt.group("ident") else mt.start("punct")
        tokens.append((mt.group("ident") or mt.group("punct"), start))
        pos = mt.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, expected: str | None = None):
        tok, pos = self.tokens[self.i]
        if expected is not None and tok != expected:
            shown = repr(tok) if tok else "end of input"
            raise FormulaSyntaxError(f"expected {expected!r}, found {shown}", self.text, pos)
        self.i += 1
        return tok, pos

    def expr(self) -> Term:
        left = self.atom()
        while self.peek()[0] == "|":
            self.take()
            left = join(left, self.atom())
        return left

    def atom(self) -> Term:
        tok, pos = self.take()
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if tok == "m":
            self.take("(")
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take(",")
            c = self.expr()
            self.take(")")
            return M(a, b, c)
        if tok == "box":
            if not self.sig.has_box:
                raise FormulaSyntaxError("box is not in the signature", self.text, pos)
            self.take("(")
            a = self.expr()
            self.take(")")
            return Box(a)
        if not tok:
            raise FormulaSyntaxError("unexpected end of input", self.text, pos)
        if _VAR_RE.fullmatch(tok):
            return Var(int(tok[1:]))
        if _IDENT_RE.fullmatch(tok):
            if tok in self.sig.constants:
                return Const(tok)
            raise FormulaSyntaxError(f"unknown constant {tok!r}", self.text, pos)
        raise FormulaSyntaxError(f"unexpected token {tok!r}", self.text, pos)


def parse_formula(text: str, sig: Signature = PLAIN) -> Term:
    """Parse one formula; raises FormulaSyntaxError with the offending position."""
    p = _Parser(text, sig)
    term = p.expr()
    tok, pos = p.peek()
    if tok:
        raise FormulaSyntaxError(f"trailing input {tok!r}", text, pos)
    return term


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Box):
        return f"box({format_term(t.a)})"
    if t.a == t.b:
        right = format_term(t.c)
        if is_join(t.c):
            right = f"({right})"
        return f"{format_term(t.a)}|{right}"
    return f"m({format_term(t.a)},{format_term(t.b)},{format_term(t.c)})"


def build_mn(args: Sequence[Term], last: Term) -> Term:
    """The iterated term m^n(args[0], ..., args[n], last) with n = len(args) - 1."""
    if not args:
        raise ValueError("build_mn needs at least one argument")
    acc = M(args[0], args[0], last)
    for a in args[1:]:
        acc = M(acc, a, last)
    return acc


def substitute(t: Term, mapping: Mapping[Var, Term]) -> Term:
    """Simultaneous substitution; variables missing from `mapping` are fixed."""
    if isinstance(t, Var):
        return mapping.get(t, t)
    if isinstance(t, Const):
        return t
    if isinstance(t, Box):
        return Box(substitute(t.a, mapping))
    return M(substitute(t.a, mapping), substitute(t.b, mapping), substitute(t.c, mapping))


def _walk(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, M):
            stack.extend((s.c, s.b, s.a))
        elif isinstance(s, Box):
            stack.append(s.a)


def variables_of(t: Term | Iterable[Term]) -> list[Var]:
    """Variables in first-occurrence (left to right) order."""
    terms = [t] if isinstance(t, (Var, Const, M, Box)) else list(t)
    seen: dict[Var, None] = {}
    for term in terms:
        for s in _walk(term):
            if isinstance(s, Var):
                seen.setdefault(s)
    return list(seen)


def constants_of(t: Term | Iterable[Term]) -> list[str]:
    terms = [t] if isinstance(t, (Var, Const, M, Box)) else list(t)
    seen: dict[str, None] = {}
    for term in terms:
        for s in _walk(term):
            if isinstance(s, Const):
                seen.setdefault(s.name)
    return list(seen)


def depth(t: Term) -> int:
    if isinstance(t, M):
        return 1 + max(depth(t.a), depth(t.b), depth(t.c))
    if isinstance(t, Box):
        return 1 + depth(t.a)
    return 0


def subterms(t: Term) -> list[Term]:
    """Distinct subterms, children before parents."""
    out: dict[Term, None] = {}

    def visit(s):
        if s in out:
            return
        if isinstance(s, M):
            visit(s.a); visit(s.b); visit(s.c)
        elif isinstance(s, Box):
            visit(s.a)
        out[s] = None

    visit(t)
    return list(out)


def formulas_up_to(max_depth: int, nvars: int, constants: Sequence[str] = (),
                   box: bool = False) -> list[Term]:
    """All m-terms (and box-terms) of depth <= max_depth over x0..x{nvars-1} and constants."""
    every: list[Term] = [Var(i) for i in range(nvars)] + [Const(c) for c in constants]
    known = set(every)
    for _ in range(max_depth):
        fresh: list[Term] = [M(a, b, c) for a, b, c in itertools.product(every, repeat=3)]
        if box:
            fresh += [Box(a) for a in every]
        for t in fresh:
            if t not in known:
                known.add(t)
                every.append(t)
    return every
