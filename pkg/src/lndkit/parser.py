"""Expression syntax: tokenizer, recursive-descent parser, printer, lowering.

Grammar (``^`` binds tighter than ``*``, which binds tighter than ``+``)::

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*"? factor)*          juxtaposition multiplies
    factor := base ("^" exponent)?
    base   := rational | identifier | "(" expr ")"
    exponent := uint | "(" integer arithmetic over uints and parameters ")"

Identifiers that are not declared are split greedily into declared names,
so ``tyF`` reads as ``t*y*F`` when ``t``, ``y`` and ``F`` are known.
Macros (``let F = ...``) are expanded at parse time; the tree only ever
contains literals, coefficient symbols, variables and the five operators.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import ParseError, UndeclaredIdentifier
from .poly import Poly
from .ring import RingId

# ---------------------------------------------------------------------------
# tree


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-" or "*"
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


Expr = Union[Num, Sym, Var, Neg, BinOp, Pow]

_PREC = {"+": 1, "-": 1, "*": 3}


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 2
    if isinstance(e, Pow):
        return 4
    if isinstance(e, Num) and e.value.denominator != 1:
        return 3
    return 5


def to_text(e: Expr) -> str:
    """Explicit rendering; re-parsing it gives back the same tree."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, (Sym, Var)):
        return e.name
    if isinstance(e, Neg):
        inner = to_text(e.arg)
        return "-" + (inner if _prec(e.arg) >= 3 else f"({inner})")
    if isinstance(e, Pow):
        inner = to_text(e.base)
        return (inner if _prec(e.base) == 5 else f"({inner})") + f"^{e.exp}"
    left, right = to_text(e.left), to_text(e.right)
    p = _PREC[e.op]
    if _prec(e.left) < p or (isinstance(e.left, Neg) and e.op == "*"):
        left = f"({left})"
    # right operands are never re-associated; a Neg on the right needs parentheses too
    if _prec(e.right) <= p or isinstance(e.right, Neg):
        right = f"({right})"
    sep = "*" if e.op == "*" else f" {e.op} "
    return left + sep + right


# ---------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()=]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "id", "op" or "end"
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1, col0: int = 1) -> List[Token]:
    out, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos,
                             ("number", "identifier", "operator"))
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), line, col0 + m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", line, col0 + len(text)))
    return out


# ---------------------------------------------------------------------------
# scope and parser


@dataclass
class Scope:
    """Names visible to expressions."""

    symbols: Tuple[str, ...] = ()
    variables: Tuple[str, ...] = ("x", "y", "z")
    macros: Dict[str, Expr] = None
    params: Dict[str, int] = None

    def __post_init__(self):
        self.macros = dict(self.macros or {})
        self.params = dict(self.params or {})

    def known(self) -> Dict[str, str]:
        names = {}
        for n in self.params:
            names[n] = "param"
        for n in self.symbols:
            names[n] = "symbol"
        for n in self.macros:
            names[n] = "macro"
        for n in self.variables:
            names[n] = "var"
        return names


def split_identifier(word: str, known: Mapping[str, str]) -> Optional[List[str]]:
    """Split ``word`` into declared names, preferring long prefixes."""
    if word in known:
        return [word]
    for k in range(len(word) - 1, 0, -1):
        head = word[:k]
        if head in known:
            rest = split_identifier(word[k:], known)
            if rest is not None:
                return [head] + rest
    return None


def _longest_prefix(word: str, known: Mapping[str, str]) -> int:
    """Length of the longest prefix that splits into declared names."""
    best = 0
    for k in range(1, len(word) + 1):
        if split_identifier(word[:k], known) is not None:
            best = k
    return best


class Parser:
    def __init__(self, tokens: Sequence[Token], scope: Scope):
        self.toks = list(tokens)
        self.i = 0
        self.scope = scope
        self.known = scope.known()

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _error(self, msg: str, expected: Sequence[str], tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col, expected)

    def _take(self, text: str) -> Token:
        if self.tok.kind != "op" or self.tok.text != text:
            found = self.tok.text or "end of input"
            self._error(f"unexpected {found!r}", (repr(text),))
        t = self.tok
        self.i += 1
        return t

    def _at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def parse_expr(self) -> Expr:
        neg = False
        if self._at("-"):
            self.i += 1
            neg = True
        node = self.parse_term()
        if neg:
            node = Neg(node)
        while self._at("+") or self._at("-"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.parse_term())
        return node

    def _starts_factor(self) -> bool:
        return self.tok.kind in ("num", "id") or self._at("(")

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while True:
            if self._at("*"):
                self.i += 1
            elif not self._starts_factor():
                return node
            node = BinOp("*", node, self.parse_factor())

    def parse_factor(self) -> Expr:
        parts = self.parse_base()
        if self._at("^"):
            self.i += 1
            # the exponent belongs to the last name of a split identifier
            parts[-1] = Pow(parts[-1], self.parse_exponent())
        node = parts[0]
        for right in parts[1:]:
            node = BinOp("*", node, right)
        return node

    def parse_exponent(self) -> int:
        if self.tok.kind == "num":
            v = int(self.tok.text)
            self.i += 1
            return v
        if self.tok.kind == "id" and self.tok.text in self.scope.params:
            v = self.scope.params[self.tok.text]
            self.i += 1
            return v
        if self._at("("):
            start = self.tok
            self.i += 1
            v = self._int_expr()
            self._take(")")
            if v < 0:
                raise ParseError(f"negative exponent {v}", start.line, start.col, ("nonnegative integer",))
            return v
        self._error("exponent must be a nonnegative integer", ("integer", "'('", "parameter"))

    def _int_expr(self) -> int:
        v = self._int_term()
        while self._at("+") or self._at("-"):
            op = self.tok.text
            self.i += 1
            w = self._int_term()
            v = v + w if op == "+" else v - w
        return v

    def _int_term(self) -> int:
        v = self._int_atom()
        while self._at("*") or self._starts_factor():
            if self._at("*"):
                self.i += 1
            v *= self._int_atom()
        return v

    def _int_atom(self) -> int:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return int(t.text)
        if t.kind == "id":
            if t.text not in self.scope.params:
                raise UndeclaredIdentifier(f"exponent uses unbound parameter {t.text!r}", t.line, t.col,
                                           tuple(sorted(self.scope.params)) or ("integer",))
            self.i += 1
            return self.scope.params[t.text]
        if self._at("-"):
            self.i += 1
            return -self._int_atom()
        if self._at("("):
            self.i += 1
            v = self._int_expr()
            self._take(")")
            return v
        self._error("bad exponent arithmetic", ("integer", "parameter", "'('"))

    def parse_base(self) -> List[Expr]:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            value = Fraction(int(t.text))
            if self._at("/"):
                self.i += 1
                if self.tok.kind != "num":
                    self._error("a rational literal needs an integer denominator", ("integer",))
                den = int(self.tok.text)
                if den == 0:
                    self._error("zero denominator", ("nonzero integer",))
                self.i += 1
                value = value / den
            return [Num(value)]
        if t.kind == "id":
            self.i += 1
            names = split_identifier(t.text, self.known)
            if names is None:
                k = _longest_prefix(t.text, self.known)
                bad = re.match(r"[A-Za-z_][A-Za-z0-9_]*|\d+", t.text[k:]).group(0) if k < len(t.text) else t.text
                raise UndeclaredIdentifier(f"undeclared identifier {bad!r}", t.line, t.col + k,
                                           tuple(sorted(self.known)))
            return [self._name(n) for n in names]
        if self._at("("):
            self.i += 1
            node = self.parse_expr()
            self._take(")")
            return [node]
        found = t.text or "end of input"
        self._error(f"unexpected {found!r}", ("number", "identifier", "'('"))

    def _name(self, name: str) -> Expr:
        kind = self.known[name]
        if kind == "var":
            return Var(name)
        if kind == "symbol":
            return Sym(name)
        if kind == "macro":
            return self.scope.macros[name]
        return Num(Fraction(self.scope.params[name]))

    def expect_end(self):
        if self.tok.kind != "end":
            self._error(f"unexpected {self.tok.text!r}", ("operator", "end of input"))


def parse_expr(text: str, scope: Optional[Scope] = None, line: int = 1, col0: int = 1) -> Expr:
    p = Parser(tokenize(text, line, col0), scope or Scope())
    node = p.parse_expr()
    p.expect_end()
    return node


# ---------------------------------------------------------------------------
# lowering to polynomials


def lower(e: Expr, ring: RingId, variables: Sequence[str]) -> Poly:
    n = len(variables)
    index = {v: i for i, v in enumerate(variables)}

    def go(node: Expr) -> Poly:
        if isinstance(node, Num):
            return Poly.const(ring, n, node.value)
        if isinstance(node, Var):
            return Poly.var(ring, n, index[node.name])
        if isinstance(node, Sym):
            return Poly.symbol(ring, n, node.name)
        if isinstance(node, Neg):
            return -go(node.arg)
        if isinstance(node, Pow):
            return go(node.base) ** node.exp
        a, b = go(node.left), go(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b

    return go(e)


def parse_poly(text: str, ring: RingId = RingId.Q, variables: Sequence[str] = ("x", "y", "z"),
               macros: Optional[Dict[str, Expr]] = None, params: Optional[Dict[str, int]] = None) -> Poly:
    scope = Scope(ring.symbols, tuple(variables), macros, params)
    return lower(parse_expr(text, scope), ring, variables)
