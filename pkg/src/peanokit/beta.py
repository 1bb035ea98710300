"""Godel's beta function and Chinese-remainder coding of finite sequences.

beta(x1, x2, x3) is the remainder of x1 modulo 1 + (x3 + 1) * x2.  Any
finite sequence f0, ..., f_{k-1} is captured by a pair (n, d): take
l = max(k, f0, ..., f_{k-1}), d = l!, and n the least simultaneous
solution of n = fi (mod 1 + (i+1) * d).  Then beta(n, d, i) = fi for
every i below k; the value at k and beyond is unconstrained.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd
from typing import Iterable, Sequence

__all__ = ["BetaPair", "beta", "encode_seq", "moduli_coprime_check"]


@dataclass(frozen=True)
class BetaPair:
    """The (n, d) pair coding a finite sequence; d is always a factorial."""
    n: int
    d: int


def beta(x1: int, x2: int, x3: int) -> int:
    """Remainder of x1 on division by 1 + (x3 + 1) * x2."""
    for name, value in (("x1", x1), ("x2", x2), ("x3", x3)):
        if not isinstance(value, int) or value < 0:
            raise ValueError(f"{name} must be a natural number, got {value!r}")
    return x1 % (1 + (x3 + 1) * x2)


def encode_seq(values: Sequence[int] | Iterable[int]) -> BetaPair:
    """Code a non-empty sequence of naturals as the least-n BetaPair."""
    vals = list(values)
    if not vals:
        raise ValueError("cannot encode an empty sequence")
    for v in vals:
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"sequence entries must be naturals, got {v!r}")
    k = len(vals)
    l = max(k, max(vals))
    d = factorial(l)
    # Iterative CRT; the moduli are pairwise coprime because l >= k.
    n = vals[0] % (1 + d)
    m = 1 + d
    for i in range(1, k):
        mod = 1 + (i + 1) * d
        t = ((vals[i] - n) * pow(m, -1, mod)) % mod
        n += m * t
        m *= mod
    return BetaPair(n, d)


def moduli_coprime_check(l: int, k: int) -> bool:
    """True iff the k moduli 1 + (i+1) * l! are pairwise coprime."""
    if not isinstance(l, int) or l < 0 or not isinstance(k, int) or k < 0:
        raise ValueError("l and k must be natural numbers")
    d = factorial(l)
    moduli = [1 + (i + 1) * d for i in range(k)]
    return all(
        gcd(moduli[i], moduli[j]) == 1
        for i in range(k) for j in range(i + 1, k)
    )
