"""Command-line interface: commands, exit codes, output formats."""

import json

import pytest

from sl2comps.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestDecompose:
    def test_paper_tensor_square(self, capsys):
        code, out, _ = run(capsys, "decompose", "--p", "5",
                           "--expr", "W(4)*W(4)")
        assert code == 0
        assert "[[8, 1], [6, 1], [4, 1], [2, 2], [0, 2]]" in out

    def test_twisted_expression(self, capsys):
        code, out, _ = run(capsys, "decompose", "--p", "2",
                           "--expr", "1^[r]*1^[s]", "--twists", "r=0,s=1")
        assert code == 0 and "[[3, 1]]" in out

    def test_bad_characteristic(self, capsys):
        code, _, err = run(capsys, "decompose", "--p", "6", "--expr", "1")
        assert code == 2 and "config error" in err

    def test_bad_expression(self, capsys):
        code, _, err = run(capsys, "decompose", "--p", "5", "--expr", "W(")
        assert code == 2


class TestRestrictAndCertify:
    def test_restrict_known_row(self, capsys):
        code, out, _ = run(capsys, "restrict", "--group", "F4", "--id", "7",
                           "--p", "11", "--module", "min")
        assert code == 0
        assert "[[10, 1], [8, 1], [4, 1], [0, 1]]" in out

    def test_certify_positive(self, capsys):
        code, out, _ = run(capsys, "certify", "--group", "G2", "--id", "1",
                           "--p", "2", "--twists", "r=1,s=0", "--bound", "3")
        assert code == 0 and "irreducible-by-wrongcomps" in out

    def test_certify_reducible_entry(self, capsys):
        code, out, _ = run(capsys, "certify", "--group", "E8", "--id", "r1",
                           "--p", "5", "--bound", "3")
        assert code == 0 and "known-reducible" in out

    def test_missing_twists_is_config_error(self, capsys):
        code, _, err = run(capsys, "restrict", "--group", "G2", "--id", "1",
                           "--p", "5")
        assert code == 2 and "missing twists" in err


class TestVerification:
    def test_verify_comps_pass(self, capsys):
        code, out, _ = run(capsys, "verify-comps", "--group", "F4",
                           "--id", "7", "--p", "11", "--bound", "3")
        assert code == 0 and "status=pass" in out

    def test_verify_comps_requires_p_or_primes(self, capsys):
        code, _, err = run(capsys, "verify-comps", "--group", "F4",
                           "--bound", "3")
        assert code == 2

    def test_verify_conditions(self, capsys):
        code, out, _ = run(capsys, "verify-conditions", "--table", "cond27",
                           "--bound", "3")
        assert code == 0 and "status=pass" in out

    def test_distinctness(self, capsys):
        code, out, _ = run(capsys, "distinctness", "--group", "G2",
                           "--p", "5", "--bound", "3", "--module", "both")
        assert code == 0
        assert out.count("status=pass") == 2

    def test_emit_e8(self, capsys):
        code, out, _ = run(capsys, "emit-e8-comps", "--p", "17", "--bound", "0")
        assert code == 0 and "group=E8" in out

    def test_bound_guard(self, capsys):
        code, _, err = run(capsys, "verify-comps", "--group", "G2",
                           "--p", "5", "--bound", "9")
        assert code == 2 and "bound" in err


class TestDeterminismAndFormats:
    def test_identical_runs_identical_output(self, capsys):
        a = run(capsys, "verify-comps", "--group", "G2", "--p", "3",
                "--bound", "2")
        b = run(capsys, "verify-comps", "--group", "G2", "--p", "3",
                "--bound", "2")
        assert a == b

    def test_json_and_text_carry_same_records(self, capsys):
        _, text_out, _ = run(capsys, "restrict", "--group", "G2", "--id", "2",
                             "--p", "5", "--module", "adj")
        _, json_out, _ = run(capsys, "restrict", "--group", "G2", "--id", "2",
                             "--p", "5", "--module", "adj",
                             "--format", "json")
        rec = json.loads(json_out)[0]
        for key, value in rec.items():
            token = json.dumps(value) if isinstance(value, (list, dict)) else str(value)
            assert f"{key}={token}" in text_out

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "restrict", "--group", "G2", "--id", "2",
                           "--p", "5", "--format", "csv")
        assert code == 0 and out.splitlines()[0].startswith("dimension,")
