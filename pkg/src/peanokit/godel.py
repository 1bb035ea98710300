"""Prime-power Godel numbering of PA formulas and formula sequences.

A formula is serialized to its prefix-order symbol string and coded as
prod p_i ^ code(s_i) over the first primes, with the fixed symbol table
0->1, S->2, ~->3, ->->4, A->5, =->6, +->7, *->8 and xk -> 8+k.  A sequence
of codes c1..cm becomes prod p_i ^ c_i.  Both directions are exact: decoding
rejects anything without contiguous prime support or a well-formed prefix
string.  Sequence codes grow astronomically fast (the exponents are formula
codes); gmpy2 is used when available so the feasible cases stay fast.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .syntax import (
    Add, Eq, Formula, ForAll, Implies, Mul, Not, Succ, Term, Var, Zero,
)

try:
    import gmpy2
    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - mirror installs provide gmpy2
    _HAVE_GMPY2 = False

__all__ = [
    "CodecError", "SYMBOL_CODES",
    "symbols_of", "formula_from_symbols",
    "encode_formula", "decode_formula", "encode_sequence", "decode_sequence",
    "to_decimal", "from_decimal",
]


def to_decimal(n: int) -> str:
    """Decimal text of a code; sequence codes run to millions of digits,
    where CPython's quadratic conversion would stall."""
    if _HAVE_GMPY2 and n.bit_length() > 100_000:
        return gmpy2.mpz(n).digits(10)
    return str(n)


def from_decimal(s: str) -> int:
    s = s.strip()
    if _HAVE_GMPY2 and len(s) > 30_000:
        return int(gmpy2.mpz(s))
    return int(s)


class CodecError(ValueError):
    """Raised when a number is not a valid code."""


SYMBOL_CODES = {"0": 1, "S": 2, "~": 3, "->": 4, "A": 5, "=": 6, "+": 7, "*": 8}
_VAR_BASE = 8  # xk -> 8 + k

_ZERO, _SUCC, _NOT, _IMPLIES, _FORALL, _EQ, _ADD, _MUL = 1, 2, 3, 4, 5, 6, 7, 8


def symbols_of(f: Formula) -> list[int]:
    """Prefix-order symbol codes of a core-language formula."""
    out: list[int] = []

    def term(t: Term) -> None:
        if isinstance(t, Zero):
            out.append(_ZERO)
        elif isinstance(t, Var):
            out.append(_VAR_BASE + t.index)
        elif isinstance(t, Succ):
            out.append(_SUCC)
            term(t.inner)
        elif isinstance(t, Add):
            out.append(_ADD)
            term(t.left)
            term(t.right)
        elif isinstance(t, Mul):
            out.append(_MUL)
            term(t.left)
            term(t.right)
        else:
            raise TypeError(f"not a term: {t!r}")

    def formula(g: Formula) -> None:
        if isinstance(g, Eq):
            out.append(_EQ)
            term(g.left)
            term(g.right)
        elif isinstance(g, Not):
            out.append(_NOT)
            formula(g.inner)
        elif isinstance(g, Implies):
            out.append(_IMPLIES)
            formula(g.antecedent)
            formula(g.consequent)
        elif isinstance(g, ForAll):
            out.append(_FORALL)
            out.append(_VAR_BASE + g.var)
            formula(g.body)
        else:
            raise TypeError(f"not a formula: {g!r}")

    formula(f)
    return out


def formula_from_symbols(codes: Sequence[int]) -> Formula:
    """Inverse of symbols_of; raises CodecError on ill-formed strings."""
    pos = 0

    def need(kind: str) -> int:
        nonlocal pos
        if pos >= len(codes):
            raise CodecError(f"symbol string ends while reading a {kind}")
        c = codes[pos]
        pos += 1
        return c

    def term() -> Term:
        c = need("term")
        if c == _ZERO:
            return Zero()
        if c == _SUCC:
            return Succ(term())
        if c == _ADD:
            return Add(term(), term())
        if c == _MUL:
            return Mul(term(), term())
        if c > _VAR_BASE:
            return Var(c - _VAR_BASE)
        raise CodecError(f"symbol code {c} cannot start a term")

    def formula() -> Formula:
        c = need("formula")
        if c == _EQ:
            return Eq(term(), term())
        if c == _NOT:
            return Not(formula())
        if c == _IMPLIES:
            return Implies(formula(), formula())
        if c == _FORALL:
            v = need("bound variable")
            if v <= _VAR_BASE:
                raise CodecError(f"symbol code {v} is not a variable")
            return ForAll(v - _VAR_BASE, formula())
        raise CodecError(f"symbol code {c} cannot start a formula")

    f = formula()
    if pos != len(codes):
        raise CodecError("trailing symbols after a complete formula")
    return f


# ---------------------------------------------------------------------------
# Primes and big-integer helpers

_PRIMES: list[int] = [2, 3, 5, 7, 11, 13]


def _prime(i: int) -> int:
    """The i-th prime (0-based), extending a cached list by trial division."""
    while len(_PRIMES) <= i:
        c = _PRIMES[-1] + 2
        while True:
            if all(c % p for p in _PRIMES if p * p <= c):
                _PRIMES.append(c)
                break
            c += 2
    return _PRIMES[i]


def _pow(base: int, exp: int) -> int:
    if _HAVE_GMPY2 and exp > 4096:
        return int(gmpy2.mpz(base) ** exp)
    return base ** exp


def _remove(x: int, p: int) -> tuple[int, int]:
    """(x / p^e, e) with e the multiplicity of p in x."""
    if x % p:
        return x, 0
    if _HAVE_GMPY2:
        y, e = gmpy2.remove(gmpy2.mpz(x), p)
        return int(y), int(e)
    # Binary lifting keeps this polynomial even for huge multiplicities:
    # strip the largest p^(2^i) factor each round.
    e = 0
    while x % p == 0:
        q, k = p, 1
        while True:
            sq = q * q
            if x % sq == 0:
                q, k = sq, k * 2
            else:
                break
        x //= q
        e += k
    return x, e


def _consecutive_exponents(g: int) -> list[int]:
    """Exponents of 2, 3, 5, ... in g; errors unless the support is an
    initial segment of the primes and g > 1."""
    if not isinstance(g, int) or g < 1:
        raise CodecError(f"not a code: {g!r}")
    if g == 1:
        raise CodecError("1 codes the empty symbol string, which is not valid")
    exps: list[int] = []
    i = 0
    rest = g
    while rest > 1:
        p = _prime(i)
        rest, e = _remove(rest, p)
        if e == 0:
            raise CodecError(f"not a code: exponent of prime {p} missing")
        exps.append(e)
        i += 1
    return exps


# ---------------------------------------------------------------------------
# Public codec operations


def encode_formula(f: Formula) -> int:
    """The Godel number of a core-language formula (injective)."""
    code = 1
    for i, s in enumerate(symbols_of(f)):
        code *= _pow(_prime(i), s)
    return code


def decode_formula(g: int) -> Formula:
    """The unique formula with code g; raises CodecError otherwise."""
    return formula_from_symbols(_consecutive_exponents(g))


def encode_sequence(items: Sequence[int] | Iterable[int]) -> int:
    """Code a non-empty sequence of codes as prod p_i ^ item_i."""
    vals = list(items)
    if not vals:
        raise CodecError("cannot encode an empty sequence")
    for v in vals:
        if not isinstance(v, int) or v < 1:
            raise CodecError(f"sequence entries must be codes >= 1, got {v!r}")
    code = 1
    for i, v in enumerate(vals):
        code *= _pow(_prime(i), v)
    return code


def decode_sequence(g: int) -> list[int]:
    """Exponent list of g over consecutive primes; errors on gaps."""
    return _consecutive_exponents(g)
