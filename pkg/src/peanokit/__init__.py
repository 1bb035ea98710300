"""peanokit: a toolkit for first-order Peano Arithmetic.

Modules:
  syntax        terms, formulas, parsing, printing, substitution
  godel         prime-power numbering of formulas and sequences
  beta          the beta function and CRT sequence coding
  primrec       primitive recursive expressions and evaluation
  arithmetizer  compilation of PR functions into representing formulas
  semantics     Tarski evaluation: exact, budgeted search, certificates
  proofs        Hilbert-style proof checking and the proof relation
  cli           command-line front end
"""

from . import arithmetizer, beta, cli, godel, primrec, proofs, semantics, syntax
from .beta import BetaPair, beta as beta_fn, encode_seq, moduli_coprime_check
from .primrec import STANDARD, PRFunction, eval_pr, rank
from .semantics import Verdict, check_certificate, eval_closed, eval_term, satisfies
from .syntax import Formula, Term, free_vars, numeral, parse_formula, render, substitute

__version__ = "0.1.0"

__all__ = [
    "arithmetizer", "beta", "cli", "godel", "primrec", "proofs",
    "semantics", "syntax",
    "BetaPair", "beta_fn", "encode_seq", "moduli_coprime_check",
    "STANDARD", "PRFunction", "eval_pr", "rank",
    "Verdict", "check_certificate", "eval_closed", "eval_term", "satisfies",
    "Formula", "Term", "free_vars", "numeral", "parse_formula", "render",
    "substitute",
    "__version__",
]
