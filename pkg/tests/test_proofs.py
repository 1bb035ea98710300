import random

import pytest

import proof_corpus
from conftest import formula_corpus
from peanokit.godel import (
    CodecError, encode_formula, encode_sequence, formula_from_symbols,
    symbols_of,
)
from peanokit.proofs import (
    AxiomJ, GenJ, MPJ, ProofLine, ProofParseError, ProofSequence,
    check_proof, induction_instance, is_axiom, parse_proof_text, proves_rel,
)
from peanokit.syntax import (
    Eq, ForAll, Var, Zero, free_vars, parse_formula,
)


def pf(text):
    return parse_formula(text)


@pytest.mark.parametrize("text,name", [
    ("(x1 + 0) = x1", "PA5"),
    ("((x1 + S(x2)) + 0) = (x1 + S(x2))", "PA5"),  # schema instance
    ("~0 = S(x1)", "PA3"),
    ("~0 = S((x1 * x2))", "PA3"),
    ("(x1 = x2 -> (x1 = x3 -> x2 = x3))", "PA1"),
    ("(x1 = x2 -> S(x1) = S(x2))", "PA2"),
    ("(S(x1) = S(x2) -> x1 = x2)", "PA4"),
    ("(x1 + S(x2)) = S((x1 + x2))", "PA6"),
    ("(x1 * 0) = 0", "PA7"),
    ("(x1 * S(x2)) = ((x1 * x2) + x1)", "PA8"),
    ("(0 = 0 -> (S(0) = 0 -> 0 = 0))", "K1"),
    ("((0 = 0 -> (S(0) = 0 -> x1 = 0)) -> ((0 = 0 -> S(0) = 0) -> (0 = 0 -> x1 = 0)))", "K2"),
    ("((~S(0) = 0 -> ~0 = 0) -> ((~S(0) = 0 -> 0 = 0) -> S(0) = 0))", "K3"),
    ("((Ax1)x1 = 0 -> S(0) = 0)", "K4"),
    ("((Ax1)0 = 0 -> 0 = 0)", "K4"),  # vacuous instantiation
    ("((Ax1)(0 = 0 -> x1 = x1) -> (0 = 0 -> (Ax1)x1 = x1))", "K5"),
])
def test_axiom_recognition(text, name):
    assert is_axiom(pf(text)) == name


@pytest.mark.parametrize("text", [
    "0 = S(0)",
    "0 = 0",
    "(x1 = x2 -> x2 = x1)",          # symmetry is not an axiom here
    "((Ax1)(Ax2)~x1 = x2 -> (Ax2)~x2 = x2)",   # K4 blocked by capture
    "((Ax1)(x1 = 0 -> x1 = x1) -> (x1 = 0 -> (Ax1)x1 = x1))",  # K5 side condition
])
def test_non_axioms(text):
    assert is_axiom(pf(text)) is None


def test_pa9_recognition_via_induction_instance():
    f = pf("x1 = x1")
    inst = induction_instance(f, 1)
    expected = pf("(0 = 0 -> ((Ax1)(x1 = x1 -> S(x1) = S(x1)) -> (Ax1)x1 = x1))")
    assert inst == expected
    assert is_axiom(inst) == "PA9"


def test_induction_instance_vacuous_variable():
    inst = induction_instance(pf("0 = 0"), 1)
    assert is_axiom(inst) == "PA9"


def test_induction_instance_free_variable_audit():
    for f in formula_corpus(seed=31, count=80, depth=4, max_var=4):
        inst = induction_instance(f, 1)
        assert free_vars(inst) == free_vars(f) - {1}


def test_single_line_axiom_proof():
    p = ProofSequence((ProofLine(pf("(x1 + 0) = x1"), AxiomJ()),))
    result = check_proof(p)
    assert result.ok and result.conclusion == pf("(x1 + 0) = x1")
    assert result.justifications == ("axiom PA5",)


def test_two_line_gen_proof():
    p = parse_proof_text(proof_corpus.GEN_PROOF)
    result = check_proof(p)
    assert result.ok
    assert result.conclusion == pf("(Ax1)(x1 + 0) = x1")


def test_mp_proof():
    result = check_proof(parse_proof_text(proof_corpus.MP_PROOF))
    assert result.ok
    assert result.conclusion == pf("(0 = 0 -> (x1 + 0) = x1)")


def test_forall_reflexivity_showcase():
    result = check_proof(parse_proof_text(proof_corpus.FORALL_REFLEXIVITY))
    assert result.ok
    assert result.conclusion == ForAll(1, Eq(Var(1), Var(1)))
    assert result.justifications[4] == "axiom PA9"


def test_unjustified_lines_are_inferred():
    result = check_proof(parse_proof_text(proof_corpus.GEN_PROOF_UNJUSTIFIED))
    assert result.ok
    assert result.justifications == ("axiom PA5", "gen 1 x1")


def test_all_corpus_proofs_accepted():
    for name, text in proof_corpus.CORPUS.items():
        result = check_proof(parse_proof_text(text))
        assert result.ok, name


def test_soundness_bridge_for_decidable_conclusions():
    # every accepted closed, bounded-decidable conclusion is true over N
    from peanokit.semantics import UnboundedQuantifierError, Verdict, eval_closed
    checked = 0
    for name, text in proof_corpus.CORPUS.items():
        result = check_proof(parse_proof_text(text))
        assert result.ok
        if free_vars(result.conclusion):
            continue
        try:
            verdict = eval_closed(result.conclusion, "exact")
        except UnboundedQuantifierError:
            continue
        assert verdict == Verdict.TRUE, name
        checked += 1
    assert checked >= 3  # the closed one- and two-line axiom proofs


@pytest.mark.parametrize("lines,line,fragment", [
    ((ProofLine(pf("0 = 0"), AxiomJ()),), 1, "not an instance"),
    ((ProofLine(pf("(x1 + 0) = x1"), AxiomJ()),
      ProofLine(pf("0 = 0"), MPJ(1, 1))), 2, "not (line"),
    ((ProofLine(pf("(x1 + 0) = x1"), MPJ(1, 2)),), 1, "earlier"),
    ((ProofLine(pf("(x1 + 0) = x1"), AxiomJ()),
      ProofLine(pf("(Ax2)(x1 + 0) = x1"), GenJ(1, 1))), 2, "applied to line"),
    ((ProofLine(pf("(x1 + 0) = x1"), AxiomJ("PA6")),), 1, "mismatch"),
])
def test_check_proof_failures(lines, line, fragment):
    result = check_proof(ProofSequence(lines))
    assert not result.ok
    assert result.line == line
    assert fragment.lower() in result.reason.lower()


def test_proof_parse_errors():
    with pytest.raises(ProofParseError):
        parse_proof_text("0 = 0 ;; zigzag 1")
    with pytest.raises(ProofParseError):
        parse_proof_text("0 = = 0 ;; axiom")
    with pytest.raises(ProofParseError):
        parse_proof_text("# only a comment\n")


def test_proves_rel_one_line_proof():
    f = pf("(0 + 0) = 0")
    code = encode_formula(f)
    x = encode_sequence([code])
    assert x == 2 ** code
    assert proves_rel(x, code)
    assert not proves_rel(x, encode_formula(pf("0 = 0")))


def test_proves_rel_rejects_non_proofs():
    assert not proves_rel(7, 960)               # 7 is not a sequence code
    assert not proves_rel(2 ** 960, 960)        # "0 = 0" is not an axiom
    assert not proves_rel(0, 960)
    assert not proves_rel(12, 960)              # entries 2, 1 are not formula codes


def random_symbol_mutations(text, count, seed):
    """Yield proofs with one symbol of one non-final line changed."""
    rng = random.Random(seed)
    base = parse_proof_text(text)
    produced = 0
    while produced < count:
        idx = rng.randrange(len(base.lines) - 1)
        symbols = symbols_of(base.lines[idx].formula)
        pos = rng.randrange(len(symbols))
        old = symbols[pos]
        alphabet = [c for c in range(1, 12) if c != old]
        symbols[pos] = rng.choice(alphabet)
        produced += 1
        try:
            mutated = formula_from_symbols(symbols)
        except CodecError:
            yield None  # ill-formed symbol string: rejected by construction
            continue
        lines = list(base.lines)
        lines[idx] = ProofLine(mutated, lines[idx].justification)
        yield ProofSequence(tuple(lines))


def test_mutations_rejected_or_conclusion_changed():
    base = parse_proof_text(proof_corpus.FORALL_REFLEXIVITY)
    conclusion = check_proof(base).conclusion
    rejected = accepted_changed = illformed = 0
    for mutant in random_symbol_mutations(proof_corpus.FORALL_REFLEXIVITY, 40, seed=9):
        if mutant is None:
            illformed += 1
            continue
        result = check_proof(mutant)
        if not result.ok:
            rejected += 1
        else:
            assert result.conclusion != conclusion
            accepted_changed += 1
    assert rejected + illformed + accepted_changed == 40
    assert rejected > 0
