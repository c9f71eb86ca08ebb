import json
from pathlib import Path

import pytest

from kpowers import cli, suites
from kpowers.complexes import homology
from kpowers.io import parse_file
from kpowers.simplicial import gamma, levelwise_exterior, normalize

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_homology_command(capsys):
    code, out, _ = run(capsys, "homology", DATA / "times2.cx")
    assert code == 0
    assert "H_0(C) = Z/2" in out and "H_1(C) = 0" in out


def test_lambda_square_of_times_two_matches_pipeline_oracle(capsys):
    C = parse_file(DATA / "times2.cx")
    oracle = normalize(levelwise_exterior(gamma(C, 3), 2))
    code, out, _ = run(capsys, "lambda", DATA / "times2.cx", "--k", 2, "--format", "json-lines")
    assert code == 0
    got = {r["degree"]: (r["free_rank"], r["torsion"]) for r in records(out)
           if r["record"] == "homology"}
    for n, (free, tors) in got.items():
        want_free, want_tors = homology(oracle, n)
        assert (free, tors) == (want_free, [str(t) for t in want_tors])
    assert got[1] == (0, ["2"])


def test_lambda_text_report_contains_differentials(capsys):
    code, out, _ = run(capsys, "lambda", DATA / "times2.cx", "--k", 2)
    assert code == 0
    assert "d 2" in out and "H_1(⋀^2 C) = Z/2" in out


def test_lambda_over_another_ring(capsys):
    code, out, _ = run(capsys, "lambda", DATA / "times2.cx", "--k", 2, "--ring", "F2")
    assert code == 0 and "H_1(⋀^2 C) = F2^1" in out


def test_lambda_of_a_quasi_isomorphism(capsys):
    code, out, _ = run(capsys, "lambda", DATA / "quasi_iso.map", "--k", 3)
    assert code == 0 and "PASS ⋀^3 preserves the quasi-isomorphism" in out


def test_euler_on_cone_of_identity(capsys):
    code, out, _ = run(capsys, "euler", DATA / "cone_id.cx", "--k", 2)
    assert code == 0 and "chi(C) = 0" in out and "chi(⋀^2 C) = 0" in out


def test_k1class_command(capsys):
    code, out, _ = run(capsys, "k1class", DATA / "unit3.bin")
    assert code == 0 and "k1_class = 3" in out
    code, out, _ = run(capsys, "k1class", DATA / "unit3.bin", "--k", 2)
    assert code == 0 and "k1_class = 1/3" in out


def test_compose_command(capsys):
    code, out, _ = run(capsys, "compose", "--k", 2, "--l", 2, "--format", "json-lines")
    assert code == 0
    poly = next(r for r in records(out) if r["record"] == "polynomial")
    assert poly["terms"] == [[[1, 0, 1, 0], 1], [[0, 0, 0, 1], -1]]


def test_equivariant_file(capsys):
    code, out, _ = run(capsys, "equivariant", DATA / "s3_standard.rep", "--k", 2, "--l", 2)
    assert code == 0 and "['2', '0', '-1']" in out


def test_equivariant_rejects_modular_ring(capsys):
    code, _, err = run(capsys, "equivariant", DATA / "s3_standard.rep", "--ring", "F3")
    assert code == 2 and "characteristic 3" in err


def test_axioms_command(capsys):
    code, out, _ = run(capsys, "axioms")
    assert code == 0 and "suite axioms: 120/120 ok" in out


def test_wrong_kind_of_input(capsys):
    code, _, err = run(capsys, "k1class", DATA / "times2.cx")
    assert code == 2 and "BinaryComplex" in err


def test_errors_as_json_lines(capsys, tmp_path):
    bad = tmp_path / "bad.cx"
    bad.write_text("ring Z\ndegree 0 rank 1\nd 1\n1\n", encoding="utf-8")
    code, out, _ = run(capsys, "homology", bad, "--format", "json-lines")
    assert code == 2
    (rec,) = records(out)
    assert rec["record"] == "error" and "line 3, column 1" in rec["message"]


def test_partial_failure_exits_nonzero(capsys, monkeypatch):
    def broken():
        cases = [("ok-case", lambda seed: (True, "")), ("bad-case", lambda seed: (False, "boom"))]
        return suites.Suite("lambda", "broken", cases)

    monkeypatch.setitem(suites.SUITES, "lambda", broken)
    code, out, _ = run(capsys, "verify-all", "--suite", "lambda", "--format", "json-lines")
    assert code == 1
    recs = records(out)
    failures = [r for r in recs if r["record"] == "failures"]
    assert failures == [{"record": "failures", "count": 1, "names": ["lambda/bad-case"]}]


def test_crashing_case_is_a_failure(capsys, monkeypatch):
    def crashing():
        return suites.Suite("lambda", "crash", [("c", lambda seed: 1 / 0)])

    monkeypatch.setitem(suites.SUITES, "lambda", crashing)
    code, out, _ = run(capsys, "verify-all", "--suite", "lambda")
    assert code == 1 and "ZeroDivisionError" in out


def test_non_gating_mismatch_does_not_fail(capsys, monkeypatch):
    def reported():
        return suites.Suite("k1-experiment", "r", [("x", lambda seed: (False, "mismatch"))],
                            gating=False)

    monkeypatch.setitem(suites.SUITES, "k1-experiment", reported)
    code, out, _ = run(capsys, "verify-all", "--suite", "k1-experiment")
    assert code == 0 and "INFO k1-experiment/x: mismatch" in out


@pytest.mark.parametrize("suite", ["lambda", "equivariant"])
def test_suite_output_is_thread_independent(capsys, suite):
    _, one, _ = run(capsys, "verify-all", "--suite", suite)
    _, many, _ = run(capsys, "verify-all", "--suite", suite, "--threads", 8)
    assert one == many


def test_bad_arguments_exit_with_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["lambda", str(DATA / "times2.cx"), "--k", "0"])
    assert info.value.code == 2


def test_lambda_output_parses_back(capsys):
    from kpowers.io import parse_complex

    code, out, _ = run(capsys, "lambda", DATA / "times2.cx", "--k", 2)
    assert code == 0
    lines = out.splitlines()
    start = lines.index("--- ⋀^2 C")
    P = parse_complex("\n".join(lines[start + 1:lines.index("---", start)]) + "\n")
    oracle = normalize(levelwise_exterior(gamma(parse_file(DATA / "times2.cx"), 3), 2))
    assert P.ranks == (0, 1, 1)
    assert [homology(P, n) for n in range(3)] == [homology(oracle, n) for n in range(3)]
