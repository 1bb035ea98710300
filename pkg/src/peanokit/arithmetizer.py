"""Compilation of primitive recursive functions into PA formulas.

Each function f of arity n compiles to a formula over x1..xn (inputs) and
x_{n+1} (output).  Base functions become single equations; composition
becomes an existentially quantified conjunction chaining inner outputs into
the outer inputs; primitive recursion becomes the classical construction
over the remainder predicate Bt:

    (Eu)(Ev)( (Ew)(Bt(u,v,0,w) & G(inputs,w))
              & Bt(u,v,counter,out)
              & (Aw)(w < counter -> (Ey)(Ez)(Bt(u,v,w,y) & Bt(u,v,S(w),z)
                                             & H(inputs,w,y,z))) )

where Bt(a,b,i,r) is (Eq)(a = ((1+(S(i)*b)) * q + r) & r < 1+(S(i)*b)),
i.e. r is the remainder of a modulo 1 + (i+1)*b.

Existential quantifiers that sit outside the recursion loop are recorded as
ordered certificate slots; a Certificate lists one natural per slot, and the
slot values for true instances come from the beta coding of the recursion
value sequence (see make_certificate).  Existentials inside the loop vary
with the loop index and are decided from (u, v) by modular arithmetic when
a certificate is checked (see semantics.check_certificate).
"""

from __future__ import annotations

from dataclasses import dataclass

from .beta import encode_seq
from .primrec import (
    Comp, PRArityError, PRFunction, PrimRec, Proj, SuccFn, ZeroFn,
    eval_pr, validate,
)
from .syntax import (
    Add, Eq, Formula, ForAll, Implies, Mul, Succ, Term, Var, Zero,
    conj, exists, less, numeral, substitute,
)

__all__ = ["SlotInfo", "Certificate", "CompiledFormula", "bt_formula",
           "compile", "make_certificate", "slot_layout", "instance"]


@dataclass(frozen=True)
class SlotInfo:
    """Description of one certificate slot (for manifests and debugging)."""
    description: str


@dataclass(frozen=True)
class Certificate:
    """Naturals for the existential slots of a CompiledFormula, in order."""
    slot_values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "slot_values", tuple(self.slot_values))
        for v in self.slot_values:
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"slot values must be naturals, got {v!r}")


@dataclass(frozen=True)
class CompiledFormula:
    formula: Formula
    input_vars: tuple[int, ...]
    output_var: int
    slots: tuple[SlotInfo, ...]
    source: PRFunction


class _Alloc:
    def __init__(self, start: int):
        self.next = start

    def fresh(self) -> int:
        i = self.next
        self.next += 1
        return i


def _bt(u: int, v: int, index: Term, r: int, alloc: _Alloc,
        what: str) -> tuple[Formula, SlotInfo]:
    """Bt(u, v, index, r) with an explicit quotient witness slot."""
    q = alloc.fresh()
    lb = alloc.fresh()
    modulus = Add(Succ(Zero()), Mul(Succ(index), Var(v)))
    equation = Eq(Var(u), Add(Mul(modulus, Var(q)), Var(r)))
    return exists(q, conj(equation, less(Var(r), modulus, binder=lb))), \
        SlotInfo(f"{what}: division quotient witness")


def bt_formula(u: int, v: int, i: int, w: int) -> Formula:
    """The remainder formula Bt over the four given variable indices.

    States that x_w is the remainder of x_u modulo 1 + (x_i + 1) * x_v,
    with all abbreviations expanded.
    """
    indices = (u, v, i, w)
    if len(set(indices)) != 4:
        raise ValueError(f"variable indices must be distinct, got {indices}")
    for k in indices:
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"variable indices must be positive, got {k!r}")
    alloc = _Alloc(max(indices) + 1)
    f, _ = _bt(u, v, Var(i), w, alloc, "Bt")
    return f


def _build(fn: PRFunction, inputs: tuple[int, ...], out: int,
           alloc: _Alloc, path: str) -> tuple[Formula, list[SlotInfo]]:
    if isinstance(fn, ZeroFn):
        return Eq(Var(out), Zero()), []
    if isinstance(fn, SuccFn):
        return Eq(Var(out), Succ(Var(inputs[0]))), []
    if isinstance(fn, Proj):
        return Eq(Var(out), Var(inputs[fn.i - 1])), []
    if isinstance(fn, Comp):
        ys = [alloc.fresh() for _ in fn.inners]
        slots = [SlotInfo(f"{path}: value of inner function {j + 1}")
                 for j in range(len(ys))]
        parts: list[Formula] = []
        for j, (g, y) in enumerate(zip(fn.inners, ys)):
            sub, sub_slots = _build(g, inputs, y, alloc, f"{path}.in{j + 1}")
            parts.append(sub)
            slots.extend(sub_slots)
        outer, outer_slots = _build(fn.outer, tuple(ys), out, alloc, f"{path}.out")
        slots.extend(outer_slots)
        body = outer
        for part in reversed(parts):
            body = conj(part, body)
        formula = body
        for y in reversed(ys):
            formula = exists(y, formula)
        return formula, slots
    if isinstance(fn, PrimRec):
        ks, counter = inputs[:-1], inputs[-1]
        u = alloc.fresh()
        v = alloc.fresh()
        w0 = alloc.fresh()
        slots = [
            SlotInfo(f"{path}: u, beta code of the recursion value sequence"),
            SlotInfo(f"{path}: v, factorial base of the beta moduli"),
            SlotInfo(f"{path}: w0, base value g(inputs)"),
        ]
        bt0, q0 = _bt(u, v, Zero(), w0, alloc, f"{path}: base Bt(u,v,0,w0)")
        slots.append(q0)
        g_formula, g_slots = _build(fn.g, ks, w0, alloc, f"{path}.g")
        slots.extend(g_slots)
        bt_out, q_out = _bt(u, v, Var(counter), out, alloc,
                            f"{path}: output Bt(u,v,counter,out)")
        slots.append(q_out)
        w = alloc.fresh()
        loop_binder = alloc.fresh()
        y = alloc.fresh()
        z = alloc.fresh()
        bt_y, _ = _bt(u, v, Var(w), y, alloc, f"{path}: loop Bt at w")
        bt_z, _ = _bt(u, v, Succ(Var(w)), z, alloc, f"{path}: loop Bt at w+1")
        h_formula, _ = _build(fn.h, ks + (w, y), z, alloc, f"{path}.h")
        loop = ForAll(w, Implies(
            less(Var(w), Var(counter), binder=loop_binder),
            exists(y, exists(z, conj(bt_y, conj(bt_z, h_formula))))))
        base = exists(w0, conj(bt0, g_formula))
        formula = exists(u, exists(v, conj(base, conj(bt_out, loop))))
        return formula, slots
    raise TypeError(f"not a PR function: {fn!r}")


def compile(f: PRFunction) -> CompiledFormula:
    """Compile f into the PA formula representing it.

    Inputs are x1..xn, the output is x_{n+1}; fresh variables continue from
    x_{n+2} in order of first appearance, so identical inputs give identical
    formulas.
    """
    validate(f)
    n = f.arity
    inputs = tuple(range(1, n + 1))
    formula, slots = _build(f, inputs, n + 1, _Alloc(n + 2), "f")
    return CompiledFormula(formula, inputs, n + 1, tuple(slots), f)


def slot_layout(f: PRFunction) -> tuple[SlotInfo, ...]:
    """The certificate slot descriptions of compile(f), without the formula."""
    return compile(f).slots


def instance(cf: CompiledFormula, args, out: int) -> Formula:
    """The closed formula asserting f(args) = out: inputs and output
    replaced by numerals."""
    argv = tuple(args)
    if len(argv) != len(cf.input_vars):
        raise PRArityError(f"expected {len(cf.input_vars)} arguments, got {len(argv)}")
    f = cf.formula
    for var, value in zip(cf.input_vars, argv):
        f = substitute(f, var, numeral(value))
    return substitute(f, cf.output_var, numeral(out))


def make_certificate(cf: CompiledFormula, f: PRFunction, args,
                     budget: int | None = None) -> Certificate:
    """Witness values for the instance (args, eval_pr(f, args)).

    Per recursion layer the (u, v) slots are the beta coding of the
    recursion value sequence, the quotient slots are the corresponding
    division quotients, and composition slots are the inner function
    values.  `budget` caps each internal evaluation.
    """
    if f != cf.source:
        raise ValueError("certificate requested for a different function than compiled")
    argv = tuple(args)
    if len(argv) != f.arity:
        raise PRArityError(f"expected {f.arity} arguments, got {len(argv)}")
    return Certificate(tuple(_witnesses(f, argv, budget)))


def _witnesses(fn: PRFunction, args: tuple[int, ...],
               budget: int | None) -> list[int]:
    if isinstance(fn, (ZeroFn, SuccFn, Proj)):
        return []
    if isinstance(fn, Comp):
        ys = [eval_pr(g, args, budget) for g in fn.inners]
        out = list(ys)
        for g in fn.inners:
            out.extend(_witnesses(g, args, budget))
        out.extend(_witnesses(fn.outer, tuple(ys), budget))
        return out
    if isinstance(fn, PrimRec):
        ks, m = args[:-1], args[-1]
        seq = [eval_pr(fn.g, ks, budget)]
        for w in range(m):
            seq.append(eval_pr(fn.h, ks + (w, seq[-1]), budget))
        pair = encode_seq(seq)
        u, v = pair.n, pair.d
        q0 = u // (1 + v)
        q_out = u // (1 + (m + 1) * v)
        return [u, v, seq[0], q0] + _witnesses(fn.g, ks, budget) + [q_out]
    raise TypeError(f"not a PR function: {fn!r}")
