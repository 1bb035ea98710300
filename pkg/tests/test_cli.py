import json

import pytest

import proof_corpus
from peanokit.cli import run


def out_of(capsys):
    captured = capsys.readouterr()
    return captured.out, captured.err


def test_parse_roundtrip(capsys):
    assert run(["parse", "(Ex1)(x1 = 0)"]) == 0
    out, _ = out_of(capsys)
    assert out == "~(Ax1)~x1 = 0\n"


def test_parse_error_exit_code(capsys):
    assert run(["parse", "0 = "]) == 2
    _, err = out_of(capsys)
    assert "error" in err


def test_godel_encode_decode(capsys):
    assert run(["godel-encode", "0 = 0"]) == 0
    out, _ = out_of(capsys)
    assert out == "960\n"
    assert run(["godel-decode", "960"]) == 0
    out, _ = out_of(capsys)
    assert out == "0 = 0\n"
    assert run(["godel-decode", "7"]) == 2


def test_beta_encode_example(capsys):
    assert run(["beta-encode", "--seq", "2,3"]) == 0
    out, _ = out_of(capsys)
    assert out == "16 6\n"


def test_beta_decode(capsys):
    assert run(["beta-decode", "--pair", "16,6", "--count", "2"]) == 0
    out, _ = out_of(capsys)
    assert out == "2 3\n"


def test_pr_eval(capsys):
    assert run(["pr-eval", "--fn", "add", "--args", "2,3"]) == 0
    out, _ = out_of(capsys)
    assert out == "5\n"


def test_pr_eval_with_file(tmp_path, capsys):
    defs = tmp_path / "defs.pr"
    defs.write_text("let double = C[add; P[1,1], P[1,1]]\n")
    assert run(["pr-eval", "--fn", "double", "--file", str(defs),
                "--args", "6"]) == 0
    out, _ = out_of(capsys)
    assert out == "12\n"


def test_compile_prints_slot_manifest(capsys):
    assert run(["compile", "--fn", "add"]) == 0
    out, _ = out_of(capsys)
    assert "slot 0:" in out and "slot 4:" in out
    assert "output: x3" in out


def test_eval_exact(capsys):
    assert run(["eval", "--mode", "exact", "0 = 0"]) == 0
    out, _ = out_of(capsys)
    assert out == "true\n"
    assert run(["eval", "--mode", "exact", "S(0) = 0"]) == 1


def test_eval_search_unknown_exit(capsys):
    assert run(["eval", "--mode", "search", "--budget", "100",
                "(Ax1)~S(x1) = 0"]) == 3
    out, _ = out_of(capsys)
    assert out == "unknown\n"


def test_eval_exact_rejects_unbounded(capsys):
    assert run(["eval", "--mode", "exact", "(Ax1)~S(x1) = 0"]) == 2


def test_certify_then_check(tmp_path, capsys):
    assert run(["certify", "--fn", "add", "--args", "2,3"]) == 0
    out, _ = out_of(capsys)
    cert_file = tmp_path / "cert.txt"
    cert_file.write_text(out)
    assert run(["eval", "--fn", "add", "--instance", "2,3,5",
                "--cert", str(cert_file)]) == 0
    out, _ = out_of(capsys)
    assert out == "true\n"
    assert run(["eval", "--fn", "add", "--instance", "2,3,6",
                "--cert", str(cert_file)]) == 1


def test_proof_check_accept_and_reject(tmp_path, capsys):
    good = tmp_path / "good.proof"
    good.write_text(proof_corpus.FORALL_REFLEXIVITY)
    assert run(["proof-check", str(good)]) == 0
    out, _ = out_of(capsys)
    assert out.startswith("accepted: (Ax1)x1 = x1")

    bad = tmp_path / "bad.proof"
    bad.write_text("0 = 0 ;; axiom\n")
    assert run(["proof-check", str(bad)]) == 1
    out, _ = out_of(capsys)
    assert "rejected at line 1" in out

    ugly = tmp_path / "ugly.proof"
    ugly.write_text("0 = ;; axiom\n")
    assert run(["proof-check", str(ugly)]) == 2


def test_proof_arith_direct_relation(capsys):
    assert run(["proof-arith", "--x", "7", "--y", "960"]) == 1
    out, _ = out_of(capsys)
    assert out == "false\n"


def test_proof_arith_small_file(tmp_path, capsys):
    f = tmp_path / "p.proof"
    f.write_text(proof_corpus.ONE_LINE_PA3 + "\n")
    assert run(["proof-arith", str(f)]) == 0
    out, _ = out_of(capsys)
    lines = out.splitlines()
    assert lines[0].startswith("x ") and lines[1].startswith("y ")
    assert lines[2] == "true"


def test_proof_arith_refuses_unmaterializable(tmp_path, capsys):
    f = tmp_path / "big.proof"
    f.write_text(proof_corpus.GEN_PROOF)
    assert run(["proof-arith", str(f)]) == 2
    _, err = out_of(capsys)
    assert "not materializable" in err


def test_represent_check_grid(capsys):
    assert run(["represent-check", "--fn", "add", "--max", "2"]) == 0
    out, _ = out_of(capsys)
    assert out.rstrip().endswith("OK 9/9")


def test_json_output_is_deterministic(capsys):
    assert run(["beta-encode", "--seq", "2,3", "--json"]) == 0
    first, _ = out_of(capsys)
    assert run(["beta-encode", "--seq", "2,3", "--json"]) == 0
    second, _ = out_of(capsys)
    assert first == second
    payload = json.loads(first)
    assert payload == {"command": "beta-encode", "verdict": "ok",
                       "data": {"n": "16", "d": "6"}}


def test_usage_error_exit(capsys):
    assert run(["no-such-command"]) == 2
    assert run([]) == 2
