"""Hilbert-style proof checking for PA and the arithmetized proof relation.

Axioms: the eight arithmetic schemata PA1-PA8 (closed under substituting
arbitrary terms for their variables), the induction schema PA9, and the
Mendelson logical schemata K1-K5.  Rules: modus ponens and generalisation.
A proof is a non-empty sequence of lines; cited lines strictly precede the
line citing them.  `mp i j` reads "from A at line i and A -> B at line j
infer B"; `gen i xk` reads "from A at line i infer (Axk)A".  Unjustified
lines are resolved by bounded search: axiom match first, then all modus
ponens pairs, then all generalisation sources.

proves_rel(x, y) holds when x is the Godel number of a proof sequence and
y codes its conclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .godel import CodecError, decode_formula, decode_sequence, encode_formula
from .syntax import (
    Add, Eq, Formula, ForAll, Implies, Mul, Not, Succ, Term, Var, Zero,
    CaptureError, FormulaSyntaxError, free_vars, parse_formula, render,
    substitute, term_vars,
)

__all__ = [
    "AxiomJ", "MPJ", "GenJ", "Justification",
    "ProofLine", "ProofSequence", "ProofResult", "ProofParseError",
    "is_axiom", "check_proof", "proves_rel", "induction_instance",
    "parse_proof_text",
]


@dataclass(frozen=True)
class AxiomJ:
    """Line is an axiom instance; name, when given, must match the schema."""
    name: str | None = None


@dataclass(frozen=True)
class MPJ:
    """Modus ponens from line i (A) and line j (A -> B)."""
    i: int
    j: int


@dataclass(frozen=True)
class GenJ:
    """Generalisation of line i over x_var."""
    i: int
    var: int


Justification = Union[AxiomJ, MPJ, GenJ, None]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    justification: Justification = None


@dataclass(frozen=True)
class ProofSequence:
    lines: tuple[ProofLine, ...]

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        if not self.lines:
            raise ValueError("a proof sequence must be non-empty")


@dataclass(frozen=True)
class ProofResult:
    ok: bool
    conclusion: Formula | None = None
    line: int | None = None
    reason: str | None = None
    justifications: tuple[str, ...] = ()


class ProofParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Axiom recognition

# PA1-PA8 are matched structurally with x1, x2, x3 as term metavariables.
_V1, _V2, _V3 = Var(1), Var(2), Var(3)
_PA_TEMPLATES: tuple[tuple[str, Formula], ...] = (
    ("PA1", Implies(Eq(_V1, _V2), Implies(Eq(_V1, _V3), Eq(_V2, _V3)))),
    ("PA2", Implies(Eq(_V1, _V2), Eq(Succ(_V1), Succ(_V2)))),
    ("PA3", Not(Eq(Zero(), Succ(_V1)))),
    ("PA4", Implies(Eq(Succ(_V1), Succ(_V2)), Eq(_V1, _V2))),
    ("PA5", Eq(Add(_V1, Zero()), _V1)),
    ("PA6", Eq(Add(_V1, Succ(_V2)), Succ(Add(_V1, _V2)))),
    ("PA7", Eq(Mul(_V1, Zero()), Zero())),
    ("PA8", Eq(Mul(_V1, Succ(_V2)), Add(Mul(_V1, _V2), _V1))),
)


def _match_term(template: Term, t: Term, binding: dict[int, Term]) -> bool:
    if isinstance(template, Var):
        seen = binding.get(template.index)
        if seen is None:
            binding[template.index] = t
            return True
        return seen == t
    if isinstance(template, Zero):
        return isinstance(t, Zero)
    if isinstance(template, Succ):
        return isinstance(t, Succ) and _match_term(template.inner, t.inner, binding)
    if isinstance(template, Add):
        return (isinstance(t, Add)
                and _match_term(template.left, t.left, binding)
                and _match_term(template.right, t.right, binding))
    if isinstance(template, Mul):
        return (isinstance(t, Mul)
                and _match_term(template.left, t.left, binding)
                and _match_term(template.right, t.right, binding))
    raise TypeError(f"bad template node: {template!r}")


def _match_schema(template: Formula, f: Formula, binding: dict[int, Term]) -> bool:
    if isinstance(template, Eq):
        return (isinstance(f, Eq)
                and _match_term(template.left, f.left, binding)
                and _match_term(template.right, f.right, binding))
    if isinstance(template, Not):
        return isinstance(f, Not) and _match_schema(template.inner, f.inner, binding)
    if isinstance(template, Implies):
        return (isinstance(f, Implies)
                and _match_schema(template.antecedent, f.antecedent, binding)
                and _match_schema(template.consequent, f.consequent, binding))
    raise TypeError(f"bad template node: {template!r}")


def _is_pa9(f: Formula) -> bool:
    # F(0) -> ( (Ax)(F -> F[S(x)/x]) -> (Ax)F )
    if not (isinstance(f, Implies) and isinstance(f.consequent, Implies)):
        return False
    base, rest = f.antecedent, f.consequent
    step, concl = rest.antecedent, rest.consequent
    if not isinstance(concl, ForAll):
        return False
    x, body = concl.var, concl.body
    try:
        expected_step = ForAll(x, Implies(body, substitute(body, x, Succ(Var(x)))))
        expected_base = substitute(body, x, Zero())
    except CaptureError:  # pragma: no cover - S(x)/0 never capture
        return False
    return step == expected_step and base == expected_base


def _find_instantiation(template: Formula, f: Formula, x: int) -> Term | None | str:
    """Find t with template[t/x] == f, treating rebound x as opaque.

    Returns the term, None when x is not free (any t works if f == template),
    or the string "mismatch".
    """
    found: list[Term] = []

    def terms(a: Term, b: Term, bound: frozenset[int]) -> bool:
        if isinstance(a, Var) and a.index == x and x not in bound:
            found.append(b)
            return True
        if isinstance(a, Var):
            return a == b
        if isinstance(a, Zero):
            return isinstance(b, Zero)
        if isinstance(a, Succ):
            return isinstance(b, Succ) and terms(a.inner, b.inner, bound)
        if isinstance(a, Add):
            return isinstance(b, Add) and terms(a.left, b.left, bound) \
                and terms(a.right, b.right, bound)
        if isinstance(a, Mul):
            return isinstance(b, Mul) and terms(a.left, b.left, bound) \
                and terms(a.right, b.right, bound)
        raise TypeError(f"not a term: {a!r}")

    def formulas(a: Formula, b: Formula, bound: frozenset[int]) -> bool:
        if isinstance(a, Eq):
            return isinstance(b, Eq) and terms(a.left, b.left, bound) \
                and terms(a.right, b.right, bound)
        if isinstance(a, Not):
            return isinstance(b, Not) and formulas(a.inner, b.inner, bound)
        if isinstance(a, Implies):
            return isinstance(b, Implies) \
                and formulas(a.antecedent, b.antecedent, bound) \
                and formulas(a.consequent, b.consequent, bound)
        if isinstance(a, ForAll):
            return isinstance(b, ForAll) and a.var == b.var \
                and formulas(a.body, b.body, bound | {a.var})
        raise TypeError(f"not a formula: {a!r}")

    if not formulas(template, f, frozenset()):
        return "mismatch"
    if not found:
        return None
    first = found[0]
    if any(t != first for t in found[1:]):
        return "mismatch"
    return first


def _is_k4(f: Formula) -> bool:
    # (Ax)A -> A[t/x], t free for x in A.
    if not (isinstance(f, Implies) and isinstance(f.antecedent, ForAll)):
        return False
    x, body = f.antecedent.var, f.antecedent.body
    t = _find_instantiation(body, f.consequent, x)
    if t == "mismatch":
        return False
    if t is None:
        return True  # x not free; the instance is A itself
    try:
        return substitute(body, x, t) == f.consequent
    except CaptureError:
        return False


def _is_k5(f: Formula) -> bool:
    # (Ax)(A -> B) -> (A -> (Ax)B), x not free in A.
    if not (isinstance(f, Implies) and isinstance(f.antecedent, ForAll)):
        return False
    x, body = f.antecedent.var, f.antecedent.body
    if not isinstance(body, Implies):
        return False
    rhs = f.consequent
    if not (isinstance(rhs, Implies) and isinstance(rhs.consequent, ForAll)):
        return False
    if rhs.consequent.var != x:
        return False
    return (rhs.antecedent == body.antecedent
            and rhs.consequent.body == body.consequent
            and x not in free_vars(body.antecedent))


def is_axiom(f: Formula) -> str | None:
    """The name of the first matching axiom schema, or None."""
    for name, template in _PA_TEMPLATES:
        if _match_schema(template, f, {}):
            return name
    if _is_pa9(f):
        return "PA9"
    if isinstance(f, Implies):
        a, c = f.antecedent, f.consequent
        # K1: A -> (B -> A)
        if isinstance(c, Implies) and c.consequent == a:
            return "K1"
        # K2: (A -> (B -> C)) -> ((A -> B) -> (A -> C))
        if (isinstance(a, Implies) and isinstance(a.consequent, Implies)
                and isinstance(c, Implies)
                and isinstance(c.antecedent, Implies)
                and isinstance(c.consequent, Implies)):
            aa, ab, ac = a.antecedent, a.consequent.antecedent, a.consequent.consequent
            if (c.antecedent == Implies(aa, ab)
                    and c.consequent == Implies(aa, ac)):
                return "K2"
        # K3: (~B -> ~A) -> ((~B -> A) -> B)
        if (isinstance(a, Implies) and isinstance(a.antecedent, Not)
                and isinstance(a.consequent, Not)
                and isinstance(c, Implies) and isinstance(c.antecedent, Implies)):
            nb, na = a.antecedent, a.consequent
            if (c.antecedent == Implies(nb, na.inner)
                    and c.consequent == nb.inner):
                return "K3"
        if _is_k4(f):
            return "K4"
        if _is_k5(f):
            return "K5"
    return None


# ---------------------------------------------------------------------------
# Proof checking


def check_proof(p: ProofSequence) -> ProofResult:
    """Validate every line; returns the conclusion or the first bad line."""
    resolved: list[str] = []
    for idx, line in enumerate(p.lines, start=1):
        f, j = line.formula, line.justification

        def fail(reason: str) -> ProofResult:
            return ProofResult(False, None, idx, reason, tuple(resolved))

        if isinstance(j, AxiomJ):
            name = is_axiom(f)
            if name is None:
                return fail("not an instance of any axiom schema")
            if j.name is not None and j.name != name:
                return fail(f"axiom name mismatch: matched {name}, cited {j.name}")
            resolved.append(f"axiom {name}")
        elif isinstance(j, MPJ):
            if not (1 <= j.i < idx and 1 <= j.j < idx):
                return fail("modus ponens must cite earlier lines")
            major = p.lines[j.j - 1].formula
            minor = p.lines[j.i - 1].formula
            if major != Implies(minor, f):
                return fail(f"line {j.j} is not (line {j.i} -> this line)")
            resolved.append(f"mp {j.i} {j.j}")
        elif isinstance(j, GenJ):
            if not 1 <= j.i < idx:
                return fail("generalisation must cite an earlier line")
            if f != ForAll(j.var, p.lines[j.i - 1].formula):
                return fail(f"this line is not (Ax{j.var}) applied to line {j.i}")
            resolved.append(f"gen {j.i} x{j.var}")
        elif j is None:
            inferred = _infer(p, idx, f)
            if inferred is None:
                return fail("no justification found (axiom, mp, gen)")
            resolved.append(inferred)
        else:
            return fail(f"unknown justification {j!r}")
    return ProofResult(True, p.lines[-1].formula, None, None, tuple(resolved))


def _infer(p: ProofSequence, idx: int, f: Formula) -> str | None:
    name = is_axiom(f)
    if name is not None:
        return f"axiom {name}"
    for j in range(1, idx):
        major = p.lines[j - 1].formula
        if isinstance(major, Implies) and major.consequent == f:
            for i in range(1, idx):
                if p.lines[i - 1].formula == major.antecedent:
                    return f"mp {i} {j}"
    if isinstance(f, ForAll):
        for i in range(1, idx):
            if p.lines[i - 1].formula == f.body:
                return f"gen {i} x{f.var}"
    return None


def induction_instance(F: Formula, var: int) -> Formula:
    """The PA9 instance F(0) -> ((Ax)(F -> F(S(x))) -> (Ax)F) for x_var."""
    base = substitute(F, var, Zero())
    step = ForAll(var, Implies(F, substitute(F, var, Succ(Var(var)))))
    return Implies(base, Implies(step, ForAll(var, F)))


def proves_rel(x: int, y: int) -> bool:
    """True iff x codes a proof sequence accepted by check_proof and y codes
    its conclusion.  Undecodable x (or a y matching nothing) yields False."""
    if not isinstance(x, int) or not isinstance(y, int) or x < 1 or y < 1:
        return False
    try:
        line_codes = decode_sequence(x)
        formulas = [decode_formula(c) for c in line_codes]
    except CodecError:
        return False
    result = check_proof(ProofSequence(tuple(ProofLine(f) for f in formulas)))
    if not result.ok:
        return False
    return encode_formula(result.conclusion) == y


# ---------------------------------------------------------------------------
# Proof file format: one line per step, `formula ;; justification`


def _parse_justification(text: str, lineno: int) -> Justification:
    parts = text.split()
    if not parts:
        return None
    if parts[0] == "axiom":
        if len(parts) == 1:
            return AxiomJ()
        if len(parts) == 2:
            return AxiomJ(parts[1])
    if parts[0] == "mp" and len(parts) == 3:
        try:
            return MPJ(int(parts[1]), int(parts[2]))
        except ValueError:
            pass
    if parts[0] == "gen" and len(parts) == 3 and parts[2].startswith("x"):
        try:
            return GenJ(int(parts[1]), int(parts[2][1:]))
        except ValueError:
            pass
    raise ProofParseError(f"line {lineno}: bad justification {text!r}")


def parse_proof_text(text: str) -> ProofSequence:
    """Parse the proof file format; `#` starts a comment line."""
    lines: list[ProofLine] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        formula_text, _, just_text = stripped.partition(";;")
        try:
            f = parse_formula(formula_text.strip())
        except FormulaSyntaxError as e:
            raise ProofParseError(f"line {lineno}: {e}") from None
        lines.append(ProofLine(f, _parse_justification(just_text.strip(), lineno)))
    if not lines:
        raise ProofParseError("proof file has no lines")
    return ProofSequence(tuple(lines))
