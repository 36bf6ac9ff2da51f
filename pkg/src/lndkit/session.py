"""Session files: a ring, variables, optional weights, a derivation and queries.

One statement per line; ``#`` starts a comment::

    ring Q[t]
    vars x y z
    let F = x(tz + x) - t^2y^2
    D x = -2 t^2 F P
    degd z
"""
from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .derivation import STANDARD, Derivation
from .errors import ParseError, UndeclaredIdentifier
from .parser import Expr, Scope, lower, parse_expr, to_text
from .poly import Poly
from .ring import RingId

COMMANDS = (
    "nilpotent", "degd", "homogeneity", "kernel", "slice", "jacobian", "filtration",
    "triple", "rank", "triangular", "ntr", "newton", "verify-paper",
)
EXPR_COMMANDS = ("degd", "kernel", "slice", "newton")
_RINGS = {"Q": RingId.Q, "Q[t]": RingId.POLY_T, "circle": RingId.CIRCLE}
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Query:
    args: Tuple[str, ...]
    line: int


@dataclass
class SessionSpec:
    ring: RingId = RingId.Q
    vars: Tuple[str, ...] = ("x", "y", "z")
    weights: Optional[Tuple[int, ...]] = None
    derivation: Dict[str, Expr] = field(default_factory=dict)
    macros: Dict[str, Expr] = field(default_factory=dict)
    params: Dict[str, int] = field(default_factory=dict)
    queries: List[Query] = field(default_factory=list)

    def scope(self) -> Scope:
        return Scope(self.ring.symbols, self.vars, self.macros, self.params)

    def parse(self, text: str, line: int = 1, col0: int = 1) -> Expr:
        return parse_expr(text, self.scope(), line, col0)

    def poly(self, text: str) -> Poly:
        return lower(self.parse(text), self.ring, self.vars)

    def lower(self, e: Expr) -> Poly:
        return lower(e, self.ring, self.vars)

    def weight_vector(self) -> Tuple[int, ...]:
        return self.weights if self.weights is not None else STANDARD[: len(self.vars)]

    def build_derivation(self) -> Derivation:
        """Images in variable order; variables without a ``D`` line map to 0."""
        n = len(self.vars)
        return Derivation([
            self.lower(self.derivation[v]) if v in self.derivation else Poly.zero(self.ring, n)
            for v in self.vars
        ])

    def image_strings(self) -> Dict[str, str]:
        D = self.build_derivation()
        return {v: D.images[i].to_str(self.vars) for i, v in enumerate(self.vars)}


def _words(line: str) -> List[Tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_session(text: str, params: Optional[Dict[str, int]] = None) -> SessionSpec:
    spec = SessionSpec(params=dict(params or {}))
    seen_expr = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        words = _words(line)
        if not words:
            continue
        head, col = words[0]
        if head == "ring":
            if len(words) != 2 or words[1][0] not in _RINGS:
                c = words[1][1] if len(words) > 1 else len(line) + 1
                raise ParseError("unknown ring", lineno, c, tuple(_RINGS))
            if seen_expr:
                raise ParseError("ring must be declared before any expression", lineno, col, ())
            spec.ring = _RINGS[words[1][0]]
        elif head == "vars":
            names = words[1:]
            if not 1 <= len(names) <= 3:
                raise ParseError("vars takes one to three names", lineno, col, ("identifier",))
            if seen_expr:
                raise ParseError("vars must be declared before any expression", lineno, col, ())
            for name, c in names:
                if not _IDENT.match(name) or name in spec.ring.symbols:
                    raise ParseError(f"bad variable name {name!r}", lineno, c, ("identifier",))
            if len({n for n, _ in names}) != len(names):
                raise ParseError("repeated variable name", lineno, col, ())
            spec.vars = tuple(n for n, _ in names)
        elif head == "weights":
            vals = words[1:]
            if len(vals) != len(spec.vars):
                raise ParseError(f"weights needs {len(spec.vars)} integers, got {len(vals)}", lineno, col,
                                 ("integer",))
            try:
                spec.weights = tuple(int(v) for v, _ in vals)
            except ValueError:
                bad = next(c for v, c in vals if not re.fullmatch(r"-?\d+", v))
                raise ParseError("weights must be integers", lineno, bad, ("integer",)) from None
        elif head in ("D", "let"):
            m = re.match(r"\s*(D|let)\s+([A-Za-z_][A-Za-z0-9_]*)\s*=", line)
            if m is None:
                raise ParseError(f"malformed {head} statement", lineno, col, (f"{head} name = expr",))
            name, ncol = m.group(2), m.start(2) + 1
            expr = spec.parse(line[m.end():], lineno, m.end() + 1)
            seen_expr = True
            if head == "D":
                if name not in spec.vars:
                    raise UndeclaredIdentifier(f"undeclared variable {name!r}", lineno, ncol, spec.vars)
                spec.derivation[name] = expr
            else:
                if name in spec.vars or name in spec.ring.symbols:
                    raise ParseError(f"{name!r} is already a variable or symbol", lineno, ncol, ())
                spec.macros[name] = expr
        elif head in COMMANDS or head == "run":
            rest = line.strip()[len(head):]
            try:
                if head in EXPR_COMMANDS:
                    # the expression runs up to the first flag and needs no quoting
                    expr, _, flags = rest.partition(" --")
                    args = (head, expr.strip()) + (tuple(shlex.split("--" + flags)) if flags else ())
                else:
                    args = (head,) + tuple(shlex.split(rest))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col, ()) from None
            spec.queries.append(Query(args, lineno))
        else:
            raise ParseError(f"unknown statement {head!r}", lineno, col,
                             ("ring", "vars", "weights", "D", "let") + COMMANDS)
    return spec


def print_session(spec: SessionSpec) -> str:
    """Canonical text of the declarations (macros already expanded)."""
    out = [f"ring {spec.ring.value}", "vars " + " ".join(spec.vars)]
    if spec.weights is not None:
        out.append("weights " + " ".join(map(str, spec.weights)))
    for v in spec.vars:
        if v in spec.derivation:
            out.append(f"D {v} = {to_text(spec.derivation[v])}")
    for q in spec.queries:
        out.append(" ".join(shlex.quote(a) for a in q.args))
    return "\n".join(out) + "\n"
