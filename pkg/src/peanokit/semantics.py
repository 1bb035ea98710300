"""Tarski evaluation of PA formulas over the natural numbers.

Three regimes:

* exact decision for formulas whose quantifiers are all syntactically
  bounded (the recognizer accepts (Ax)(x < t -> F), the expanded
  bounded existential ~(Ax)~(x < t & F), and the expanded comparison
  (Aq)~((s + S(q)) = t) itself, i.e. s >= t);
* budgeted three-valued search: negation flips True/False and preserves
  Unknown, implication is strong Kleene, a recognized bounded universal
  is decided by finite scan, and an unrecognized universal enumerates
  0..budget - a falsifying instance gives False, an exhausted range gives
  Unknown, True is never returned.  One budget unit is consumed per
  binding of a quantifier variable, shared across the whole evaluation;
* certificate checking for compiled instances, which never searches:
  slot values fill the existentials outside the recursion loop, and the
  loop block is decided from (u, v) by modular arithmetic plus direct
  evaluation of the step function's defining equations.

Formulas are compiled once into generated Python evaluator functions
(terms constant-folded, bounded patterns pre-matched, loop-invariant
subterms hoisted); the budget accounting is unchanged by this.
"""

from __future__ import annotations

import functools
from enum import Enum
from typing import Iterable, Mapping

from .arithmetizer import Certificate, CompiledFormula
from .primrec import Comp, PrimRec, Proj, SuccFn, ZeroFn, eval_pr
from .syntax import (
    Add, Eq, Formula, ForAll, Implies, Mul, Not, Succ, Term, Var, Zero,
    free_vars, match_less, term_vars,
)

__all__ = [
    "Verdict", "EvaluationError", "UnboundVariableError",
    "UnboundedQuantifierError", "CertificateMismatchError",
    "eval_term", "satisfies", "eval_closed", "check_certificate",
    "search_certificate",
]


class Verdict(Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


class EvaluationError(ValueError):
    pass


class UnboundVariableError(EvaluationError):
    pass


class UnboundedQuantifierError(EvaluationError):
    """Exact mode rejects formulas with unrecognized unbounded quantifiers."""


class CertificateMismatchError(EvaluationError):
    pass


class _Exhausted(Exception):
    pass


Assignment = Mapping[int, int]


def eval_term(t: Term, a: Assignment) -> int:
    """Value of a term in the standard interpretation."""
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Var):
        try:
            v = a[t.index]
        except KeyError:
            raise UnboundVariableError(f"x{t.index} is not assigned") from None
        if not isinstance(v, int) or v < 0:
            raise EvaluationError(f"assignment maps x{t.index} to {v!r}, not a natural")
        return v
    if isinstance(t, Succ):
        return eval_term(t.inner, a) + 1
    if isinstance(t, Add):
        return eval_term(t.left, a) + eval_term(t.right, a)
    if isinstance(t, Mul):
        return eval_term(t.left, a) * eval_term(t.right, a)
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Bounded-quantifier recognition


def _match_ge(f: Formula) -> tuple[Term, Term] | None:
    """Recognize (Aq)~((s + S(q)) = t) with q free in neither s nor t,
    which asserts s >= t (the negated expansion of s < t)."""
    if not isinstance(f, ForAll):
        return None
    body = f.body
    if not (isinstance(body, Not) and isinstance(body.inner, Eq)):
        return None
    eq = body.inner
    if not (isinstance(eq.left, Add) and isinstance(eq.left.right, Succ)):
        return None
    w = eq.left.right.inner
    if not (isinstance(w, Var) and w.index == f.var):
        return None
    s, t = eq.left.left, eq.right
    if f.var in term_vars(s) | term_vars(t):
        return None
    return s, t


def _match_bounded_forall(f: ForAll) -> tuple[Term, Formula] | None:
    """(Ax)(x < t -> F) with x not free in t; returns (t, F)."""
    if not isinstance(f.body, Implies):
        return None
    m = match_less(f.body.antecedent)
    if m is None:
        return None
    s, t = m
    if not (isinstance(s, Var) and s.index == f.var):
        return None
    if f.var in term_vars(t):
        return None
    return t, f.body.consequent


def _match_bounded_exists_forall(f: ForAll) -> tuple[Term, Formula] | None:
    """The universal inside an expanded bounded existential:
    (Ax)~(x < t & F), i.e. (Ax)~~((x < t) -> ~F); returns (t, F)."""
    body = f.body
    if not (isinstance(body, Not) and isinstance(body.inner, Not)):
        return None
    inner = body.inner.inner
    if not isinstance(inner, Implies) or not isinstance(inner.consequent, Not):
        return None
    m = match_less(inner.antecedent)
    if m is None:
        return None
    s, t = m
    if not (isinstance(s, Var) and s.index == f.var):
        return None
    if f.var in term_vars(t):
        return None
    return t, inner.consequent.inner


# ---------------------------------------------------------------------------
# Formula -> Python compilation


class _HoistLevel:
    def __init__(self, var_index: int):
        self.var_index = var_index
        self.prelines: list[str] = []
        self.cache: dict[Term, str] = {}


class _CodeGen:
    """Compiles one formula into the source of an evaluator function.

    Scans whose bodies contain further scans are lifted into helper
    functions: CPython allows at most 20 statically nested loops, and the
    compiled recursion formulas nest deeper.  Expression-bodied scans (the
    hot inner loops) stay inline.
    """

    def __init__(self, strict: bool):
        self.strict = strict
        self.lines: list[str] = []
        self.functions: list[str] = []
        self.indent = 1
        self.serial = 0
        self.scope: dict[int, str] = {}
        self.hoist_levels: list[_HoistLevel] = []
        self.no_hoist = False

    # -- plumbing

    def w(self, line: str) -> None:
        self.lines.append("    " * self.indent + line)

    def fresh(self, prefix: str) -> str:
        self.serial += 1
        return f"{prefix}{self.serial}"

    def name_of(self, index: int) -> str:
        return self.scope.get(index, f"g{index}")

    # -- terms

    def term(self, t: Term) -> str:
        if not self.no_hoist and self.hoist_levels and not isinstance(t, (Zero, Var)):
            level = self.hoist_levels[-1]
            if level.var_index not in term_vars(t):
                if t in level.cache:
                    return level.cache[t]
                self.no_hoist = True
                try:
                    s = self.term(t)
                finally:
                    self.no_hoist = False
                if not s.isdigit():
                    h = self.fresh("h")
                    level.prelines.append(f"{h} = {s}")
                    level.cache[t] = h
                    return h
                level.cache[t] = s
                return s
        if isinstance(t, Zero):
            return "0"
        if isinstance(t, Var):
            return self.name_of(t.index)
        if isinstance(t, Succ):
            s = self.term(t.inner)
            return str(int(s) + 1) if s.isdigit() else f"({s} + 1)"
        if isinstance(t, Add):
            l, r = self.term(t.left), self.term(t.right)
            return str(int(l) + int(r)) if l.isdigit() and r.isdigit() else f"({l} + {r})"
        if isinstance(t, Mul):
            l, r = self.term(t.left), self.term(t.right)
            return str(int(l) * int(r)) if l.isdigit() and r.isdigit() else f"({l} * {r})"
        raise TypeError(f"not a term: {t!r}")

    # -- two-valued expression fragment

    def expr(self, f: Formula) -> str | None:
        if isinstance(f, Eq):
            return f"({self.term(f.left)} == {self.term(f.right)})"
        if isinstance(f, ForAll):
            ge = _match_ge(f)
            if ge is not None:
                return f"({self.term(ge[0])} >= {self.term(ge[1])})"
            return None
        if isinstance(f, Not):
            inner = f.inner
            if isinstance(inner, ForAll):
                ge = _match_ge(inner)
                if ge is not None:
                    return f"({self.term(ge[0])} < {self.term(ge[1])})"
            e = self.expr(inner)
            return None if e is None else f"(not {e})"
        if isinstance(f, Implies):
            a = self.expr(f.antecedent)
            if a is None:
                return None
            b = self.expr(f.consequent)
            return None if b is None else f"((not {a}) or {b})"
        return None

    # -- three-valued statement fragment

    def stmt(self, f: Formula) -> str:
        """Emit statements; returns the local holding True/False/None."""
        e = self.expr(f)
        if e is not None:
            r = self.fresh("t")
            self.w(f"{r} = {e}")
            return r
        if isinstance(f, Not):
            t1 = self.stmt(f.inner)
            r = self.fresh("t")
            self.w(f"{r} = None if {t1} is None else (not {t1})")
            return r
        if isinstance(f, Implies):
            ta = self.stmt(f.antecedent)
            r = self.fresh("t")
            self.w(f"if {ta} is False:")
            self.indent += 1
            self.w(f"{r} = True")
            self.indent -= 1
            self.w("else:")
            self.indent += 1
            tb = self.stmt(f.consequent)
            self.w(f"if {tb} is True:")
            self.indent += 1
            self.w(f"{r} = True")
            self.indent -= 1
            self.w(f"elif {ta} is True:")
            self.indent += 1
            self.w(f"{r} = {tb}")
            self.indent -= 1
            self.w("else:")
            self.indent += 1
            self.w(f"{r} = None")
            self.indent -= 2
            return r
        if isinstance(f, ForAll):
            bf = _match_bounded_forall(f)
            if bf is not None:
                return self.scan(f.var, bf[0], bf[1], on_true="continue")
            be = _match_bounded_exists_forall(f)
            if be is not None:
                return self.scan(f.var, be[0], be[1], on_true="stop")
            if self.strict:
                raise UnboundedQuantifierError(
                    f"unbounded quantifier (Ax{f.var}) has no exact decision")
            return self.scan(f.var, None, f.body, on_true="continue")
        raise TypeError(f"not a formula: {f!r}")

    def scan(self, var_index: int, bound: Term | None, body: Formula,
             on_true: str) -> str:
        """Emit a quantifier scan; returns the verdict local.

        bound None means the unbounded search scan over 0..cap (verdict on a
        completed range is Unknown).  on_true == "stop" emits the bounded
        existential universal: a True body below the bound falsifies it.
        """
        r = self.fresh("t")
        lv = self.fresh("v")

        level = _HoistLevel(var_index)
        self.hoist_levels.append(level)
        saved_scope = self.scope.get(var_index)
        self.scope[var_index] = lv
        try:
            body_expr = self.expr(body)
            if body_expr is not None:
                self._scan_inline(r, lv, level, bound, body_expr, on_true)
            else:
                self._scan_lifted(r, lv, level, bound, body, on_true)
        finally:
            self.hoist_levels.pop()
            if saved_scope is None:
                del self.scope[var_index]
            else:
                self.scope[var_index] = saved_scope
        return r

    def _bound_src(self, bound: Term | None) -> str:
        if bound is None:
            return "cap + 1"
        self.no_hoist = True
        try:
            return self.term(bound)
        finally:
            self.no_hoist = False

    def _scan_inline(self, r: str, lv: str, level: _HoistLevel,
                     bound: Term | None, body_expr: str, on_true: str) -> None:
        """Expression body: it consumes no budget itself, so the scan's
        ticks can be charged up front (one per value, exactly as
        per-iteration accounting would)."""
        n = self.fresh("n")
        for line in level.prelines:
            self.w(line)
        self.w(f"{n} = {self._bound_src(bound)}")
        if not self.strict:
            k = self.fresh("k")
            self.w(f"{k} = {n} if {n} <= bl else bl")
            self.w(f"bl -= {k}")
            count = k
        else:
            count = n
        self.w(f"for {lv} in range({count}):")
        self.indent += 1
        cond = f"if {body_expr}:" if on_true == "stop" else f"if not {body_expr}:"
        self.w(cond)
        self.indent += 1
        if not self.strict:
            self.w(f"bl += {count} - {lv} - 1")
        self.w(f"{r} = False")
        self.w("break")
        self.indent -= 2
        self.w("else:")
        self.indent += 1
        if not self.strict:
            self.w(f"if {count} < {n}:")
            self.indent += 1
            self.w("raise _Exhausted")
            self.indent -= 1
        self.w(f"{r} = True" if bound is not None else f"{r} = None")
        self.indent -= 1

    def _scan_lifted(self, r: str, lv: str, level: _HoistLevel,
                     bound: Term | None, body: Formula, on_true: str) -> None:
        """Statement body (contains nested scans): emit the scan as a helper
        function, ticking per iteration so the budget pool stays shared."""
        fname = self.fresh("_s")
        used = free_vars(body) | (term_vars(bound) if bound is not None else set())
        params = sorted({self.name_of(i) for i in used
                         if self.scope.get(i) != lv})
        sig = ["cap", "bl"] if not self.strict else []
        sig += params

        outer_lines, outer_indent = self.lines, self.indent
        self.lines, self.indent = [], 1
        n = self.fresh("n")
        u = self.fresh("u")
        bound_src = self._bound_src(bound)

        # Two-phase: the body may hoist prelines that must precede the loop.
        pre_mark = len(self.lines)
        self.indent += 1
        tb = self.stmt(body)
        body_lines = self.lines[pre_mark:]
        del self.lines[pre_mark:]
        self.indent -= 1

        for line in level.prelines:
            self.w(line)
        self.w(f"{n} = {bound_src}")
        self.w(f"{u} = False")
        self.w(f"for {lv} in range({n}):")
        self.indent += 1
        if not self.strict:
            self.w("bl -= 1")
            self.w("if bl < 0:")
            self.indent += 1
            self.w("raise _Exhausted")
            self.indent -= 1
        self.lines.extend(body_lines)
        first = "is True" if on_true == "stop" else "is False"
        self.w(f"if {tb} {first}:")
        self.indent += 1
        self.w(f"{r} = False")
        self.w("break")
        self.indent -= 1
        self.w(f"if {tb} is None:")
        self.indent += 1
        self.w(f"{u} = True")
        self.indent -= 1
        self.indent -= 1
        self.w("else:")
        self.indent += 1
        verdict = f"None if {u} else True" if bound is not None else "None"
        self.w(f"{r} = {verdict}")
        self.indent -= 1
        ret = f"return {r}, bl" if not self.strict else f"return {r}"
        self.w(ret)
        helper = [f"def {fname}({', '.join(sig)}):"] + self.lines
        self.functions.append("\n".join(helper))
        self.lines, self.indent = outer_lines, outer_indent

        call_args = ", ".join(sig)
        if not self.strict:
            self.w(f"{r}, bl = {fname}({call_args})")
        else:
            self.w(f"{r} = {fname}({call_args})")

    def build(self, f: Formula) -> str:
        frees = sorted(free_vars(f))
        for i in frees:
            self.w(f"g{i} = env[{i}]")
        if not self.strict:
            self.w("bl = cap")
        result = self.stmt(f)
        self.w(f"return {result}")
        header = "def _evaluate(env, cap):" if not self.strict else "def _evaluate(env):"
        main = "\n".join([header] + self.lines)
        return "\n\n".join(self.functions + [main])


@functools.lru_cache(maxsize=512)
def _evaluator(f: Formula, strict: bool):
    src = _CodeGen(strict).build(f)
    namespace = {"_Exhausted": _Exhausted}
    exec(src, namespace)  # noqa: S102 - self-generated source
    return namespace["_evaluate"]


def _as_verdict(r) -> Verdict:
    if r is True:
        return Verdict.TRUE
    if r is False:
        return Verdict.FALSE
    return Verdict.UNKNOWN


# ---------------------------------------------------------------------------
# Public evaluation API


def satisfies(f: Formula, a: Assignment, budget: int) -> Verdict:
    """Three-valued satisfaction of f under assignment a, budgeted search."""
    if not isinstance(budget, int) or budget < 0:
        raise ValueError(f"budget must be a natural number, got {budget!r}")
    missing = free_vars(f) - set(a)
    if missing:
        names = ", ".join(f"x{i}" for i in sorted(missing))
        raise UnboundVariableError(f"assignment does not cover {names}")
    env = {i: a[i] for i in free_vars(f)}
    for i, v in env.items():
        if not isinstance(v, int) or v < 0:
            raise EvaluationError(f"assignment maps x{i} to {v!r}, not a natural")
    fn = _evaluator(f, False)
    try:
        return _as_verdict(fn(env, budget))
    except _Exhausted:
        return Verdict.UNKNOWN


def eval_closed(f: Formula, mode: str = "exact",
                budget: int | None = None) -> Verdict:
    """Evaluate a closed formula.

    Exact mode decides bounded formulas and raises UnboundedQuantifierError
    on anything else; search mode runs satisfies() with the given budget
    (default 1000) and may return Unknown.
    """
    if free_vars(f):
        raise EvaluationError("eval_closed requires a closed formula")
    if mode == "exact":
        fn = _evaluator(f, True)
        result = fn({})
        if result is None:  # pragma: no cover - strict scans always decide
            raise AssertionError("exact mode produced Unknown")
        return _as_verdict(result)
    if mode == "search":
        return satisfies(f, {}, 1000 if budget is None else budget)
    raise ValueError(f"mode must be 'exact' or 'search', got {mode!r}")


# ---------------------------------------------------------------------------
# Certificate checking (instantiational verification; no search)


def check_certificate(cf: CompiledFormula, a: Assignment,
                      cert: Certificate, budget: int | None = None) -> bool:
    """Check a compiled instance with supplied witnesses.

    The assignment must cover the input and output variables.  Slot values
    fill the existentials outside the recursion loop; the bounded loop is
    scanned, with each step's witnesses computed from the certified (u, v)
    pair by modular arithmetic and the step claim decided by the defining
    equations.  No unbounded search is performed.  `budget` caps each
    internal defining-equation evaluation (forged codes can otherwise
    demand enormous finite work); exhaustion raises BudgetExhausted.
    """
    if len(cert.slot_values) != len(cf.slots):
        raise CertificateMismatchError(
            f"certificate has {len(cert.slot_values)} values for {len(cf.slots)} slots")
    needed = set(cf.input_vars) | {cf.output_var}
    missing = needed - set(a)
    if missing:
        names = ", ".join(f"x{i}" for i in sorted(missing))
        raise UnboundVariableError(f"assignment does not cover {names}")
    args = tuple(a[i] for i in cf.input_vars)
    out = a[cf.output_var]
    for v in args + (out,):
        if not isinstance(v, int) or v < 0:
            raise EvaluationError(f"instance values must be naturals, got {v!r}")
    it = iter(cert.slot_values)
    return _check(cf.source, args, out, it, budget)


def _check(fn, args: tuple[int, ...], out: int, it,
           budget: int | None) -> bool:
    if isinstance(fn, ZeroFn):
        return out == 0
    if isinstance(fn, SuccFn):
        return out == args[0] + 1
    if isinstance(fn, Proj):
        return out == args[fn.i - 1]
    if isinstance(fn, Comp):
        # every branch must run so the slot iterator stays in step
        ys = [next(it) for _ in fn.inners]
        ok = True
        for g, y in zip(fn.inners, ys):
            sub = _check(g, args, y, it, budget)
            ok = ok and sub
        sub = _check(fn.outer, tuple(ys), out, it, budget)
        return ok and sub
    if isinstance(fn, PrimRec):
        u, v, w0, q0 = next(it), next(it), next(it), next(it)
        ks, m = args[:-1], args[-1]
        m0 = 1 + v
        ok = w0 < m0 and u == q0 * m0 + w0
        sub = _check(fn.g, ks, w0, it, budget)
        ok = ok and sub
        q_out = next(it)
        mm = 1 + (m + 1) * v
        ok = ok and out < mm and u == q_out * mm + out
        if ok:
            # consumes no slots; skip once the verdict is already False
            # (forged codes can make the beta-derived values enormous)
            for w in range(m):
                y = u % (1 + (w + 1) * v)
                z = u % (1 + (w + 2) * v)
                if eval_pr(fn.h, ks + (w, y), budget) != z:
                    ok = False
                    break
        return ok
    raise TypeError(f"not a PR function: {fn!r}")


def _compositions(total: int, k: int) -> Iterable[tuple[int, ...]]:
    if k == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, k - 1):
            yield (head,) + rest


def search_certificate(cf: CompiledFormula, a: Assignment,
                       budget: int) -> Certificate | None:
    """Enumerate small certificates (graded by total slot sum) and return
    the first one check_certificate accepts, or None within the budget."""
    k = len(cf.slots)
    if k == 0:
        empty = Certificate(())
        return empty if check_certificate(cf, a, empty) else None
    tries = budget
    for total in range(budget + 1):
        for combo in _compositions(total, k):
            if tries <= 0:
                return None
            tries -= 1
            cert = Certificate(combo)
            if check_certificate(cf, a, cert):
                return cert
    return None
