"""Shared test helpers: deterministic corpus generators."""

from __future__ import annotations

import random
import sys

from peanokit.syntax import (
    Add, Eq, ForAll, Formula, Implies, Mul, Not, Succ, Term, Var, Zero,
)

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def gen_term(rng: random.Random, depth: int, max_var: int) -> Term:
    choices = ["zero", "var"]
    if depth > 0:
        choices += ["succ", "add", "mul"]
    kind = rng.choice(choices)
    if kind == "zero":
        return Zero()
    if kind == "var":
        return Var(rng.randint(1, max_var))
    if kind == "succ":
        return Succ(gen_term(rng, depth - 1, max_var))
    if kind == "add":
        return Add(gen_term(rng, depth - 1, max_var), gen_term(rng, depth - 1, max_var))
    return Mul(gen_term(rng, depth - 1, max_var), gen_term(rng, depth - 1, max_var))


def gen_formula(rng: random.Random, depth: int, max_var: int) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        return Eq(gen_term(rng, max(depth - 1, 1), max_var),
                  gen_term(rng, max(depth - 1, 1), max_var))
    kind = rng.choice(["not", "implies", "forall"])
    if kind == "not":
        return Not(gen_formula(rng, depth - 1, max_var))
    if kind == "implies":
        return Implies(gen_formula(rng, depth - 1, max_var),
                       gen_formula(rng, depth - 1, max_var))
    return ForAll(rng.randint(1, max_var), gen_formula(rng, depth - 1, max_var))


def formula_corpus(seed: int, count: int, depth: int = 5,
                   max_var: int = 6) -> list[Formula]:
    rng = random.Random(seed)
    return [gen_formula(rng, depth, max_var) for _ in range(count)]
