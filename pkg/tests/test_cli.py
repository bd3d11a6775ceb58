"""The terminal client: output text, exit codes, and the usage-error wrapper."""

import subprocess
import sys

import pytest
from click.testing import CliRunner

from itercon.cli import cli

runner = CliRunner()


def invoke(args):
    return runner.invoke(cli, args)


class TestDecide:
    def test_valid(self):
        result = invoke(["decide", "(Con(T) -> Con(~Con(T)))"])
        assert result.output == "RESULT: VALID\n"
        assert result.exit_code == 0

    def test_invalid_prints_countermodel(self):
        result = invoke(["decide", "Con(T)"])
        assert result.output == "RESULT: INVALID\nWORLDS 1\nROOT 0\n"
        assert result.exit_code == 0

    def test_unknown_fragment_exit_2(self):
        result = invoke(["decide", "Con[w](T)"])
        assert result.exit_code == 2
        assert "REASON: transfinite iteration index" in result.output

    def test_budget_cap_exit_3(self):
        result = invoke(
            ["decide", "(~Con(~(~Con(p) -> p)) -> ~Con(~p))", "--budget", "5"]
        )
        assert result.exit_code == 3
        assert "REASON: resource: expansion budget exceeded" in result.output

    def test_model_cap_exit_3(self):
        result = invoke(["decide", "~Con[5](T)", "--model-cap", "2"])
        assert result.exit_code == 3
        assert "countermodel size cap exceeded" in result.output

    def test_parse_error_exit_1(self):
        result = invoke(["decide", "(p &"])
        assert result.exit_code == 1
        assert result.output.startswith("ERROR: ")


class TestPairCommands:
    def test_proves(self):
        result = invoke(["proves", "(p & q)", "q"])
        assert result.output == "RESULT: VALID\n"

    def test_strict(self):
        result = invoke(["strict", "Con[2](T)", "Con[1](T)"])
        assert result.output == "RESULT: YES\n"
        result = invoke(["strict", "p", "q"])
        assert result.output == "RESULT: NO\n"


class TestLetterlessCommands:
    def test_nf(self):
        result = invoke(["nf", "(F | Con(T))"])
        assert result.output == "Con[1](T)\n"

    def test_nf_letters_exit_1(self):
        result = invoke(["nf", "p"])
        assert result.exit_code == 1

    def test_truth(self):
        assert invoke(["truth", "~Con(F)"]).output == "TRUE\n"
        assert invoke(["truth", "Con(F)"]).output == "FALSE\n"


class TestOrdCommands:
    def test_cmp(self):
        result = invoke(["ord", "cmp", "w*2", "w^2"])
        assert result.output == "LT\n"
        assert result.exit_code == 0

    def test_classify(self):
        assert invoke(["ord", "classify", "w^w"]).output == "LIMIT\n"

    def test_pred(self):
        assert invoke(["ord", "pred", "1"]).output == "0\n"

    def test_pred_limit_exit_1(self):
        result = invoke(["ord", "pred", "w"])
        assert result.output == "ERROR: w is not a successor\n"
        assert result.exit_code == 1

    def test_fund(self):
        result = invoke(["ord", "fund", "w^2", "2"])
        assert result.output == "w*2\nCONVENTION: standard\n"

    def test_noncanonical_exit_1(self):
        result = invoke(["ord", "classify", "w+w"])
        assert result.exit_code == 1


class TestConstructCommands:
    def test_inversion(self):
        result = invoke(["construct", "inversion", "Con(T)"])
        assert result.output.splitlines()[0] == "PSI (Con(T) -> Con(T))"
        assert result.exit_code == 0

    def test_inversion_hypothesis_not_met_exit_0(self):
        result = invoke(["construct", "inversion", "F -> F"])
        assert result.exit_code == 1  # unparenthesized binary form is a parse error
        result = invoke(["construct", "inversion", "~Con(T)"])
        assert result.output.startswith("HYPOTHESIS NOT MET")
        assert result.exit_code == 0

    def test_bbb(self):
        result = invoke(["construct", "bbb", "T", "conj_con"])
        assert result.output.startswith("THETA ")
        assert "CLAIM conclusion VERDICT Yes" in result.output
        assert result.exit_code == 0

    def test_ttt_requires_height(self):
        result = invoke(["construct", "ttt", "T", "conj_con"])
        assert result.exit_code != 0

    def test_ttt(self):
        result = invoke(["construct", "ttt", "T", "conj_con", "--n", "1"])
        assert result.output.splitlines()[0] == "PHI 1 T"
        assert result.exit_code == 0

    def test_theta(self):
        result = invoke(["construct", "theta", "3", "conj_con"])
        assert len(result.output.splitlines()) == 3

    def test_mainphi_stage_cap_exit_3(self):
        result = invoke(
            ["construct", "mainphi", "w*3", "conj_con", "--stages", "3"]
        )
        assert result.exit_code == 3

    def test_star(self):
        result = invoke(["construct", "star", "p", "--bound", "1"])
        assert result.output == "(p & (ConI[0](p) -> ConI[0]((p & ConI[0](p)))))\n"

    def test_slowcon(self):
        result = invoke(["construct", "slowcon", "p", "--bound", "2"])
        assert result.output.startswith("((@F_eps0_total_at_0 -> ConI[0](p))")

    def test_onecon_check(self):
        result = invoke(["construct", "onecon-check", "T", "--n", "2"])
        assert "CLAIM successor-step VERDICT Yes" in result.output
        assert result.exit_code == 0

    def test_onecon_check_bounds_exit_1(self):
        result = invoke(["construct", "onecon-check", "T", "--n", "9"])
        assert result.exit_code == 1


class TestOpCommands:
    def test_check_monotone(self):
        result = invoke(["op", "check-monotone", "conj_con", "--n", "5", "--seed", "3"])
        first = result.output.splitlines()[0]
        assert first == "OPERATOR conj_con SEED 3 VALID 5 INVALID 0 UNKNOWN 0"
        assert result.exit_code == 0

    def test_seed_is_mandatory(self):
        result = invoke(["op", "check-monotone", "conj_con", "--n", "5"])
        assert result.exit_code != 0


class TestEnum:
    def test_stage_dump(self):
        result = invoke(["enum", "--stages", "1"])
        assert result.output.startswith("STAGE 0\nNUM F\n")
        assert "STAGE 1" in result.output
        assert result.exit_code == 0

    def test_verify(self):
        result = invoke(["enum", "--stages", "1", "--verify"])
        assert "VERIFY INCOMPATIBILITY STAGE 1 Yes" in result.output
        assert "VERIFY UNBOUNDED TRUTH HORIZON 1 Yes" in result.output

    def test_gap_search(self):
        result = invoke(["enum", "--size-bound", "4"])
        assert result.output.endswith("GAP BASE ~F\nGAP NOT FOUND\n")

    def test_deterministic(self):
        a = invoke(["enum", "--stages", "2", "--closure-depth", "1"])
        b = invoke(["enum", "--stages", "2", "--closure-depth", "1"])
        assert a.output == b.output


class TestHelp:
    def test_group_help_lists_commands(self):
        result = invoke(["--help"])
        assert result.exit_code == 0
        for name in ("decide", "proves", "strict", "nf", "truth", "ord",
                     "construct", "op", "enum", "serve"):
            assert name in result.output

    def test_subgroup_help(self):
        assert invoke(["construct", "--help"]).exit_code == 0
        assert invoke(["ord", "--help"]).exit_code == 0


class TestMainWrapper:
    """The module-level entry point maps usage errors to exit code 1."""

    def run_main(self, *args):
        return subprocess.run(
            [sys.executable, "-m", "itercon.cli", *args],
            capture_output=True,
            text=True,
        )

    def test_happy_path(self):
        proc = self.run_main("decide", "T")
        assert proc.returncode == 0
        assert proc.stdout == "RESULT: VALID\n"

    def test_unknown_command_exit_1(self):
        proc = self.run_main("frobnicate")
        assert proc.returncode == 1
        assert proc.stdout.startswith("ERROR: ")

    def test_missing_argument_exit_1(self):
        proc = self.run_main("decide")
        assert proc.returncode == 1
        assert proc.stdout.startswith("ERROR: ")

    def test_verdict_exit_code_survives_the_wrapper(self):
        proc = self.run_main("decide", "1Con(T)")
        assert proc.returncode == 2
