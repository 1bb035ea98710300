"""Core syntax of first-order Peano Arithmetic.

Terms are built from 0, indexed variables x1, x2, ..., successor, + and *.
Formulas use the minimal language =, ~, -> and the universal quantifier.
Conjunction, disjunction, the existential quantifiers and the strict order
`t < u` exist only as surface syntax: the parser (and the builder helpers
below) expand them eagerly into the core language, and the printer never
resugars.  All values are immutable; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

__all__ = [
    "Term", "Zero", "Var", "Succ", "Add", "Mul",
    "Formula", "Eq", "Not", "Implies", "ForAll",
    "FormulaSyntaxError", "CaptureError",
    "numeral", "term_vars", "free_vars", "all_vars", "fresh_index",
    "substitute", "substitute_in_term", "rename_vars",
    "conj", "disj", "exists", "less", "expand_unique_exists", "match_less",
    "render", "render_term", "parse_formula",
]


class FormulaSyntaxError(ValueError):
    """Raised on malformed formula text; carries the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CaptureError(ValueError):
    """Raised when a substitution would capture a free variable."""


# ---------------------------------------------------------------------------
# Abstract syntax


@dataclass(frozen=True)
class Term:
    """Base class for PA terms."""


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"variable index must be a positive integer, got {self.index!r}")


@dataclass(frozen=True)
class Succ(Term):
    inner: Term


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Formula:
    """Base class for PA formulas (core language only)."""


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    inner: Formula


@dataclass(frozen=True)
class Implies(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    var: int
    body: Formula

    def __post_init__(self):
        if not isinstance(self.var, int) or self.var < 1:
            raise ValueError(f"variable index must be a positive integer, got {self.var!r}")


# ---------------------------------------------------------------------------
# Basic operations


def numeral(n: int) -> Term:
    """The closed term S(S(...S(0))) with exactly n successor applications."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"numeral argument must be a natural number, got {n!r}")
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def term_vars(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset((t.index,))
    if isinstance(t, Succ):
        return term_vars(t.inner)
    if isinstance(t, (Add, Mul)):
        return term_vars(t.left) | term_vars(t.right)
    return frozenset()


def free_vars(f: Formula) -> frozenset[int]:
    """The exact set of free variable indices of f."""
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return free_vars(f.inner)
    if isinstance(f, Implies):
        return free_vars(f.antecedent) | free_vars(f.consequent)
    if isinstance(f, ForAll):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def all_vars(f: Formula) -> frozenset[int]:
    """Every variable index occurring in f, free or bound (binders included)."""
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return all_vars(f.inner)
    if isinstance(f, Implies):
        return all_vars(f.antecedent) | all_vars(f.consequent)
    if isinstance(f, ForAll):
        return all_vars(f.body) | {f.var}
    raise TypeError(f"not a formula: {f!r}")


def fresh_index(used: frozenset[int] | set[int]) -> int:
    """Smallest index not colliding with `used`: (max used) + 1, at least 1."""
    return max(used, default=0) + 1


def substitute_in_term(t: Term, var: int, replacement: Term) -> Term:
    if isinstance(t, Var):
        return replacement if t.index == var else t
    if isinstance(t, Succ):
        return Succ(substitute_in_term(t.inner, var, replacement))
    if isinstance(t, Add):
        return Add(substitute_in_term(t.left, var, replacement),
                   substitute_in_term(t.right, var, replacement))
    if isinstance(t, Mul):
        return Mul(substitute_in_term(t.left, var, replacement),
                   substitute_in_term(t.right, var, replacement))
    return t


def substitute(f: Formula, var: int, t: Term) -> Formula:
    """Replace every free occurrence of x_var in f by the term t.

    Raises CaptureError if a free variable of t would fall under a
    quantifier of f; no silent renaming is performed.
    """
    if isinstance(f, Eq):
        return Eq(substitute_in_term(f.left, var, t), substitute_in_term(f.right, var, t))
    if isinstance(f, Not):
        return Not(substitute(f.inner, var, t))
    if isinstance(f, Implies):
        return Implies(substitute(f.antecedent, var, t), substitute(f.consequent, var, t))
    if isinstance(f, ForAll):
        if f.var == var:
            return f
        if var in free_vars(f.body) and f.var in term_vars(t):
            raise CaptureError(
                f"substituting {render_term(t)} for x{var} would capture x{f.var}")
        return ForAll(f.var, substitute(f.body, var, t))
    raise TypeError(f"not a formula: {f!r}")


def rename_vars(f: Formula, mapping: dict[int, int]) -> Formula:
    """Relabel every occurrence (free and bound) per `mapping`.

    The mapping must be injective on the variables it touches; unmapped
    indices stay put.  Internal helper for deterministic embeddings.
    """
    occurring = all_vars(f)
    image = {mapping.get(v, v) for v in occurring}
    if len(image) != len(occurring):
        raise ValueError("variable relabeling must be injective")

    def rt(t: Term) -> Term:
        if isinstance(t, Var):
            return Var(mapping.get(t.index, t.index))
        if isinstance(t, Succ):
            return Succ(rt(t.inner))
        if isinstance(t, Add):
            return Add(rt(t.left), rt(t.right))
        if isinstance(t, Mul):
            return Mul(rt(t.left), rt(t.right))
        return t

    def rf(g: Formula) -> Formula:
        if isinstance(g, Eq):
            return Eq(rt(g.left), rt(g.right))
        if isinstance(g, Not):
            return Not(rf(g.inner))
        if isinstance(g, Implies):
            return Implies(rf(g.antecedent), rf(g.consequent))
        if isinstance(g, ForAll):
            return ForAll(mapping.get(g.var, g.var), rf(g.body))
        raise TypeError(f"not a formula: {g!r}")

    return rf(f)


# ---------------------------------------------------------------------------
# Abbreviation expansion (surface syntax -> core)


def conj(a: Formula, b: Formula) -> Formula:
    """(a & b), expanded as ~(a -> ~b)."""
    return Not(Implies(a, Not(b)))


def disj(a: Formula, b: Formula) -> Formula:
    """(a | b), expanded as (~a -> b)."""
    return Implies(Not(a), b)


def exists(var: int, body: Formula) -> Formula:
    """(Ex)body, expanded as ~(Ax)~body."""
    return Not(ForAll(var, Not(body)))


def less(s: Term, t: Term, binder: int | None = None) -> Formula:
    """s < t, expanded as ~(Aw)~((s + S(w)) = t) with w fresh.

    By default w is (max index in s, t) + 1; callers building larger
    formulas may pass an explicit binder to keep allocation deterministic.
    """
    if binder is None:
        binder = fresh_index(term_vars(s) | term_vars(t))
    elif binder in term_vars(s) | term_vars(t):
        raise ValueError(f"binder x{binder} occurs in an operand of <")
    return Not(ForAll(binder, Not(Eq(Add(s, Succ(Var(binder))), t))))


def match_less(f: Formula) -> tuple[Term, Term] | None:
    """Recognize the expansion produced by less(); returns (s, t) or None."""
    if not (isinstance(f, Not) and isinstance(f.inner, ForAll)):
        return None
    fa = f.inner
    body = fa.body
    if not (isinstance(body, Not) and isinstance(body.inner, Eq)):
        return None
    eq = body.inner
    if not (isinstance(eq.left, Add) and isinstance(eq.left.right, Succ)):
        return None
    w = eq.left.right.inner
    if not (isinstance(w, Var) and w.index == fa.var):
        return None
    s, t = eq.left.left, eq.right
    if fa.var in term_vars(s) | term_vars(t):
        return None
    return s, t


def expand_unique_exists(var: int, body: Formula) -> Formula:
    """(E1 x_var)body: existence plus uniqueness, fully expanded.

    Expands to  ~(Ax)~body & (Ay)(Az)((body[y] & body[z]) -> y = z)
    with y, z the two indices after the largest one used in body.
    """
    y = fresh_index(all_vars(body) | {var})
    z = y + 1
    by = substitute(body, var, Var(y))
    bz = substitute(body, var, Var(z))
    uniqueness = ForAll(y, ForAll(z, Implies(conj(by, bz), Eq(Var(y), Var(z)))))
    return conj(exists(var, body), uniqueness)


# ---------------------------------------------------------------------------
# Printing


def render_term(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Succ):
        return f"S({render_term(t.inner)})"
    if isinstance(t, Add):
        return f"({render_term(t.left)} + {render_term(t.right)})"
    if isinstance(t, Mul):
        return f"({render_term(t.left)} * {render_term(t.right)})"
    raise TypeError(f"not a term: {t!r}")


def render(f: Formula) -> str:
    """Print f in core syntax; parse_formula(render(f)) == f."""
    if isinstance(f, Eq):
        return f"{render_term(f.left)} = {render_term(f.right)}"
    if isinstance(f, Not):
        return f"~{render(f.inner)}"
    if isinstance(f, Implies):
        return f"({render(f.antecedent)} -> {render(f.consequent)})"
    if isinstance(f, ForAll):
        return f"(Ax{f.var}){render(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Parsing

_SIMPLE_TOKENS = {
    "(": "LPAR", ")": "RPAR", "~": "TILDE", "&": "AMP", "|": "PIPE",
    "<": "LT", "=": "EQ", "+": "PLUS", "*": "STAR",
}


@dataclass(frozen=True)
class _Token:
    kind: str
    value: int
    pos: int


def _lex(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _SIMPLE_TOKENS:
            toks.append(_Token(_SIMPLE_TOKENS[c], 0, i))
            i += 1
            continue
        if c == "-":
            if text.startswith("->", i):
                toks.append(_Token("ARROW", 0, i))
                i += 2
                continue
            raise FormulaSyntaxError("expected '->'", i)
        if c == "0":
            toks.append(_Token("ZERO", 0, i))
            i += 1
            continue
        if c == "S":
            toks.append(_Token("SUCC", 0, i))
            i += 1
            continue
        if c == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise FormulaSyntaxError("variable needs an index, e.g. x1", i)
            toks.append(_Token("VAR", int(text[i + 1:j]), i))
            i = j
            continue
        if c == "A":
            toks.append(_Token("FORALL", 0, i))
            i += 1
            continue
        if c == "E":
            if text.startswith("E1x", i):
                toks.append(_Token("EXISTS1", 0, i))
                i += 2
                continue
            if text.startswith("Ex", i):
                toks.append(_Token("EXISTS", 0, i))
                i += 1
                continue
            raise FormulaSyntaxError("expected quantifier Ex<k> or E1x<k>", i)
        raise FormulaSyntaxError(f"unknown symbol {c!r}", i)
    toks.append(_Token("END", 0, n))
    return toks


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.toks = tokens

    def tok(self, i: int) -> _Token:
        return self.toks[min(i, len(self.toks) - 1)]

    @staticmethod
    def _further(a: FormulaSyntaxError, b: FormulaSyntaxError) -> FormulaSyntaxError:
        return b if b.position > a.position else a

    def formula(self, i: int) -> tuple[Formula, int]:
        t = self.tok(i)
        if t.kind == "TILDE":
            f, j = self.formula(i + 1)
            return Not(f), j
        if t.kind == "LPAR":
            k1, k2, k3 = self.tok(i + 1), self.tok(i + 2), self.tok(i + 3)
            if k1.kind in ("FORALL", "EXISTS", "EXISTS1") and k2.kind == "VAR" and k3.kind == "RPAR":
                body, j = self.formula(i + 4)
                if k1.kind == "FORALL":
                    return ForAll(k2.value, body), j
                if k1.kind == "EXISTS":
                    return exists(k2.value, body), j
                return expand_unique_exists(k2.value, body), j
            # `(` opens either a parenthesized term of an atom, a grouped
            # formula, or a binary connective; try the atom first.
            try:
                return self.atom(i)
            except FormulaSyntaxError as atom_err:
                try:
                    a, j = self.formula(i + 1)
                except FormulaSyntaxError as f_err:
                    raise self._further(atom_err, f_err) from None
                op = self.tok(j)
                if op.kind == "RPAR":
                    return a, j + 1
                if op.kind in ("ARROW", "AMP", "PIPE"):
                    b, k = self.formula(j + 1)
                    if self.tok(k).kind != "RPAR":
                        raise FormulaSyntaxError("expected ')'", self.tok(k).pos)
                    if op.kind == "ARROW":
                        return Implies(a, b), k + 1
                    if op.kind == "AMP":
                        return conj(a, b), k + 1
                    return disj(a, b), k + 1
                raise self._further(
                    atom_err,
                    FormulaSyntaxError("expected ')' or a connective", op.pos))
        return self.atom(i)

    def atom(self, i: int) -> tuple[Formula, int]:
        s, j = self.term(i)
        rel = self.tok(j)
        if rel.kind == "EQ":
            u, k = self.term(j + 1)
            return Eq(s, u), k
        if rel.kind == "LT":
            u, k = self.term(j + 1)
            return less(s, u), k
        raise FormulaSyntaxError("expected '=' or '<'", rel.pos)

    def term(self, i: int) -> tuple[Term, int]:
        t = self.tok(i)
        if t.kind == "ZERO":
            return Zero(), i + 1
        if t.kind == "VAR":
            return Var(t.value), i + 1
        if t.kind == "SUCC":
            if self.tok(i + 1).kind != "LPAR":
                raise FormulaSyntaxError("expected '(' after S", self.tok(i + 1).pos)
            inner, j = self.term(i + 2)
            if self.tok(j).kind != "RPAR":
                raise FormulaSyntaxError("expected ')'", self.tok(j).pos)
            return Succ(inner), j + 1
        if t.kind == "LPAR":
            left, j = self.term(i + 1)
            op = self.tok(j)
            if op.kind not in ("PLUS", "STAR"):
                raise FormulaSyntaxError("expected '+' or '*'", op.pos)
            right, k = self.term(j + 1)
            if self.tok(k).kind != "RPAR":
                raise FormulaSyntaxError("expected ')'", self.tok(k).pos)
            return (Add if op.kind == "PLUS" else Mul)(left, right), k + 1
        raise FormulaSyntaxError("expected a term", t.pos)


def parse_formula(text: str) -> Formula:
    """Parse formula text, expanding all abbreviations into the core language."""
    parser = _Parser(_lex(text))
    f, j = parser.formula(0)
    trailing = parser.tok(j)
    if trailing.kind != "END":
        raise FormulaSyntaxError("unexpected trailing input", trailing.pos)
    return f
