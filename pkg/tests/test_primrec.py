import pytest

from peanokit.primrec import (
    STANDARD, BudgetExhausted, Comp, PRArityError, PRParseError, PrimRec,
    Proj, SuccFn, ZeroFn, eval_pr, parse_pr, parse_pr_program, rank, validate,
)

add = STANDARD["add"]
mul = STANDARD["mul"]


def test_add_is_the_canonical_definition():
    assert add == PrimRec(Proj(1, 1), Comp(SuccFn(), (Proj(3, 3),)))


def test_eval_add():
    assert eval_pr(add, [2, 3]) == 5
    for k in range(11):
        assert eval_pr(add, [k, 0]) == k


def test_eval_mul_against_direct_arithmetic():
    for a in range(9):
        for b in range(9):
            assert eval_pr(mul, [a, b]) == a * b


@pytest.mark.parametrize("name,args,expected", [
    ("pred", (0,), 0), ("pred", (5,), 4),
    ("monus", (5, 3), 2), ("monus", (3, 5), 0),
    ("factorial", (0,), 1), ("factorial", (5,), 120),
])
def test_standard_library_values(name, args, expected):
    assert eval_pr(STANDARD[name], args) == expected


def test_rank():
    assert rank(ZeroFn()) == 0
    assert rank(add) == 1
    assert rank(mul) == 2


def test_recursions_satisfy_the_defining_equations():
    for f in [STANDARD[n] for n in ("add", "mul", "monus")]:
        for k in range(9):
            assert eval_pr(f, (k, 0)) == eval_pr(f.g, (k,))
            for m in range(8):
                assert eval_pr(f, (k, m + 1)) == eval_pr(
                    f.h, (k, m, eval_pr(f, (k, m))))


def test_projection_property():
    import random
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        i = rng.randint(1, n)
        args = [rng.randint(0, 9) for _ in range(n)]
        assert eval_pr(Proj(n, i), args) == args[i - 1]


def test_arity_errors_at_construction():
    with pytest.raises(PRArityError):
        Comp(SuccFn(), (Proj(2, 1), Proj(2, 2)))
    with pytest.raises(PRArityError):
        Proj(2, 3)
    with pytest.raises(PRArityError):
        PrimRec(ZeroFn(), ZeroFn())


def test_validate_on_library():
    for f in STANDARD.values():
        validate(f)


def test_eval_arity_mismatch():
    with pytest.raises(PRArityError):
        eval_pr(add, [1, 2, 3])


def test_budget_exhaustion_and_monotonicity():
    with pytest.raises(BudgetExhausted):
        eval_pr(mul, [5, 5], budget=3)
    # find a sufficient budget, then check all larger ones give the same value
    b = 4
    while True:
        try:
            value = eval_pr(mul, [5, 5], budget=b)
            break
        except BudgetExhausted:
            b += 1
    for extra in (0, 1, 10, 1000):
        assert eval_pr(mul, [5, 5], budget=b + extra) == value == 25


def test_dsl_roundtrip_of_library():
    src = "\n".join([
        "let pred2 = R[Z; P[3,2]]",
        "let pred = C[pred2; P[1,1], P[1,1]]",
        "let add = R[P[1,1]; C[S; P[3,3]]]",
    ])
    env = parse_pr_program(src)
    assert env["add"] == add
    assert env["pred"] == STANDARD["pred"]


def test_dsl_expression_parsing():
    assert parse_pr("R[P[1,1]; C[S; P[3,3]]]") == add
    with pytest.raises(PRParseError):
        parse_pr("R[P[1,1]; C[S; P[3,3]]")
    with pytest.raises(PRParseError):
        parse_pr("Q")
    with pytest.raises(PRParseError):
        parse_pr_program("add = S")  # missing `let`


def test_dsl_duplicate_name_rejected():
    with pytest.raises(PRParseError):
        parse_pr_program("let a = Z\nlet a = S")
