"""Primitive recursive function expressions and their direct evaluation.

The base functions are the unary constant zero, the successor, and the
projections; composition and primitive recursion build everything else.
Arities are validated at construction time, so ill-formed trees are
unrepresentable.  A small text DSL (`Z`, `S`, `P[n,i]`, `C[f; g1, ..., gk]`,
`R[g; h]` with `let name = expr` bindings) mirrors the constructors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "PRFunction", "ZeroFn", "SuccFn", "Proj", "Comp", "PrimRec",
    "PRArityError", "BudgetExhausted", "PRParseError",
    "eval_pr", "rank", "validate", "parse_pr", "parse_pr_program", "STANDARD",
]


class PRArityError(ValueError):
    """Arity mismatch in a primitive recursive definition or call."""


class BudgetExhausted(RuntimeError):
    """Evaluation exceeded its step budget."""


class PRParseError(ValueError):
    """Malformed PR DSL text."""


@dataclass(frozen=True)
class PRFunction:
    """Base class for primitive recursive function expressions."""

    @property
    def arity(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class ZeroFn(PRFunction):
    """Unary constant 0; n-ary constants are compositions over projections."""

    @property
    def arity(self) -> int:
        return 1


@dataclass(frozen=True)
class SuccFn(PRFunction):
    @property
    def arity(self) -> int:
        return 1


@dataclass(frozen=True)
class Proj(PRFunction):
    n: int
    i: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise PRArityError(f"projection arity must be >= 1, got {self.n!r}")
        if not (isinstance(self.i, int) and 1 <= self.i <= self.n):
            raise PRArityError(f"projection index {self.i!r} outside 1..{self.n}")

    @property
    def arity(self) -> int:
        return self.n


@dataclass(frozen=True)
class Comp(PRFunction):
    outer: PRFunction
    inners: tuple[PRFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "inners", tuple(self.inners))
        if not self.inners:
            raise PRArityError("composition needs at least one inner function")
        if self.outer.arity != len(self.inners):
            raise PRArityError(
                f"outer arity {self.outer.arity} != {len(self.inners)} inner functions")
        common = self.inners[0].arity
        for g in self.inners[1:]:
            if g.arity != common:
                raise PRArityError(
                    f"inner functions disagree on arity: {g.arity} vs {common}")

    @property
    def arity(self) -> int:
        return self.inners[0].arity


@dataclass(frozen=True)
class PrimRec(PRFunction):
    g: PRFunction
    h: PRFunction

    def __post_init__(self):
        if self.h.arity != self.g.arity + 2:
            raise PRArityError(
                f"recursion step must have arity {self.g.arity + 2}, got {self.h.arity}")

    @property
    def arity(self) -> int:
        return self.g.arity + 1


def validate(f: PRFunction) -> None:
    """Re-confirm the arity invariants throughout the tree.

    Construction already enforces them; this is the explicit contract check
    and raises PRArityError describing the offending node otherwise.
    """
    if isinstance(f, (ZeroFn, SuccFn, Proj)):
        return
    if isinstance(f, Comp):
        if f.outer.arity != len(f.inners):
            raise PRArityError(f"bad composition node: {f!r}")
        for g in f.inners:
            if g.arity != f.inners[0].arity:
                raise PRArityError(f"bad composition node: {f!r}")
            validate(g)
        validate(f.outer)
        return
    if isinstance(f, PrimRec):
        if f.h.arity != f.g.arity + 2:
            raise PRArityError(f"bad recursion node: {f!r}")
        validate(f.g)
        validate(f.h)
        return
    raise PRArityError(f"not a PR function node: {f!r}")


def rank(f: PRFunction) -> int:
    """Maximum nesting depth of primitive recursion."""
    if isinstance(f, (ZeroFn, SuccFn, Proj)):
        return 0
    if isinstance(f, Comp):
        return max(rank(f.outer), max(rank(g) for g in f.inners))
    if isinstance(f, PrimRec):
        return 1 + max(rank(f.g), rank(f.h))
    raise TypeError(f"not a PR function: {f!r}")


def eval_pr(f: PRFunction, args: Sequence[int], budget: int | None = None) -> int:
    """Evaluate f at args by the defining equations.

    Each function application in the evaluation tree (including every
    unfolding step of a recursion) consumes one unit of budget; None means
    unlimited.  Recursions are unrolled iteratively, so only the nesting of
    distinct definitions consumes Python stack.
    """
    argv = tuple(args)
    if len(argv) != f.arity:
        raise PRArityError(f"expected {f.arity} arguments, got {len(argv)}")
    for a in argv:
        if not isinstance(a, int) or a < 0:
            raise ValueError(f"arguments must be naturals, got {a!r}")
    cell = None if budget is None else [budget]
    return _ev(f, argv, cell)


def _ev(f: PRFunction, args: tuple[int, ...], cell: list[int] | None) -> int:
    if cell is not None:
        cell[0] -= 1
        if cell[0] < 0:
            raise BudgetExhausted("evaluation budget exhausted")
    if isinstance(f, ZeroFn):
        return 0
    if isinstance(f, SuccFn):
        return args[0] + 1
    if isinstance(f, Proj):
        return args[f.i - 1]
    if isinstance(f, Comp):
        return _ev(f.outer, tuple(_ev(g, args, cell) for g in f.inners), cell)
    if isinstance(f, PrimRec):
        ks = args[:-1]
        acc = _ev(f.g, ks, cell)
        for w in range(args[-1]):
            acc = _ev(f.h, ks + (w, acc), cell)
        return acc
    raise TypeError(f"not a PR function: {f!r}")


# ---------------------------------------------------------------------------
# Text DSL


def _lex_pr(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "[];,=":
            toks.append((c, c, i))
            i += 1
            continue
        if c.isalpha() or c == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], i))
            i = j
            continue
        if c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j], i))
            i = j
            continue
        raise PRParseError(f"unknown character {c!r} at position {i}")
    toks.append(("end", "", n))
    return toks


class _PRParser:
    def __init__(self, toks, env):
        self.toks = toks
        self.env = env
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def eat(self, kind, value=None):
        k, v, pos = self.toks[self.i]
        if k != kind or (value is not None and v != value):
            want = value or kind
            raise PRParseError(f"expected {want!r}, got {v or k!r} at position {pos}")
        self.i += 1
        return v

    def expr(self) -> PRFunction:
        kind, value, pos = self.peek()
        if kind == "name":
            self.eat("name")
            if value == "Z":
                return ZeroFn()
            if value == "S":
                return SuccFn()
            if value == "P":
                self.eat("[")
                n = int(self.eat("int"))
                self.eat(",")
                i = int(self.eat("int"))
                self.eat("]")
                return Proj(n, i)
            if value == "C":
                self.eat("[")
                outer = self.expr()
                self.eat(";")
                inners = [self.expr()]
                while self.peek()[0] == ",":
                    self.eat(",")
                    inners.append(self.expr())
                self.eat("]")
                return Comp(outer, tuple(inners))
            if value == "R":
                self.eat("[")
                g = self.expr()
                self.eat(";")
                h = self.expr()
                self.eat("]")
                return PrimRec(g, h)
            if value in self.env:
                return self.env[value]
            raise PRParseError(f"unknown name {value!r} at position {pos}")
        raise PRParseError(f"expected an expression at position {pos}")


def parse_pr(text: str, env: dict[str, PRFunction] | None = None) -> PRFunction:
    """Parse one PR expression; `env` supplies named definitions."""
    parser = _PRParser(_lex_pr(text), env or {})
    f = parser.expr()
    if parser.peek()[0] != "end":
        raise PRParseError(f"trailing input at position {parser.peek()[2]}")
    return f


def parse_pr_program(text: str,
                     base: dict[str, PRFunction] | None = None) -> dict[str, PRFunction]:
    """Parse `let name = expr` bindings, one per line; later lines may
    reference earlier names and anything in `base`.  Blank lines and `#`
    comments are skipped.  Returns base plus the new definitions."""
    env: dict[str, PRFunction] = dict(base) if base else {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("let "):
            raise PRParseError(f"line {lineno}: expected 'let name = expr'")
        rest = line[4:]
        if "=" not in rest:
            raise PRParseError(f"line {lineno}: missing '='")
        name, expr_text = rest.split("=", 1)
        name = name.strip()
        if not name.isidentifier():
            raise PRParseError(f"line {lineno}: bad name {name!r}")
        if name in env:
            raise PRParseError(f"line {lineno}: duplicate name {name!r}")
        try:
            env[name] = parse_pr(expr_text.strip(), env)
        except PRParseError as e:
            raise PRParseError(f"line {lineno}: {e}") from None
    return env


_STANDARD_SRC = """
let pred2 = R[Z; P[3,2]]
let pred = C[pred2; P[1,1], P[1,1]]
let add = R[P[1,1]; C[S; P[3,3]]]
let mul = R[Z; C[add; P[3,1], P[3,3]]]
let monus = R[P[1,1]; C[pred; P[3,3]]]
let one = C[S; Z]
let fact2 = R[one; C[mul; C[S; P[3,2]], P[3,3]]]
let factorial = C[fact2; P[1,1], P[1,1]]
"""

#: Named library used by the CLI and the verification grids.
STANDARD: dict[str, PRFunction] = parse_pr_program(_STANDARD_SRC)
