"""Integration tests for the CLI with real numerics and file output."""

import math

import numpy as np
import pytest

pytestmark = [pytest.mark.integration, pytest.mark.cli]


class TestSolveCommand:
    """solve: shooting from the command line."""

    def test_existence_profile(self, cli_runner_helper, temp_dir, ln2):
        path = temp_dir / "q.csv"
        result = cli_runner_helper.invoke_to_file(
            ["solve", "--metric", "euclidean", "--a", repr(ln2), "--samples", "101"], path
        )
        assert result.exit_code == 0, result.output
        frame = cli_runner_helper.read_csv(path)
        assert list(frame.columns) == ["r", "f", "fprime", "residual_1d"]
        assert len(frame) == 101
        assert frame["r"].iloc[0] == pytest.approx(0.5)
        assert frame["f"].iloc[0] == pytest.approx(0.0, abs=1e-12)
        assert frame["f"].iloc[-1] == pytest.approx(1.0, abs=1e-9)
        assert frame["fprime"].iloc[0] == pytest.approx(8.0 / 3.0, rel=1e-7)
        exact = (4 * frame["r"] ** 2 - 1) / (3 * frame["r"])
        assert np.max(np.abs(frame["f"] - exact)) < 1e-8
        assert np.max(np.abs(frame["residual_1d"])) < 5e-4

    def test_identity_on_poincare_disc(self, cli_runner_helper, temp_dir):
        path = temp_dir / "id.csv"
        result = cli_runner_helper.invoke_to_file(
            ["solve", "--metric", "poincare", "--bc", "identity", "--samples", "21", "--bracket-lo", "0.8", "--bracket-hi", "1.25"], path
        )
        assert result.exit_code == 0, result.output
        frame = cli_runner_helper.read_csv(path)
        assert frame["r"].iloc[0] == pytest.approx(0.5)
        assert frame["r"].iloc[-1] == pytest.approx(0.9)
        np.testing.assert_allclose(frame["f"], frame["r"], atol=1e-9)

    def test_identity_on_annulus(self, cli_runner_helper, temp_dir):
        path = temp_dir / "annulus.csv"
        result = cli_runner_helper.invoke_to_file(
            ["solve", "--metric", "annulus", "--a", "1", "--bc", "identity", "--samples", "21"]
            + ["--bracket-lo", "0.8", "--bracket-hi", "1.25"], path
        )
        assert result.exit_code == 0, result.output
        frame = cli_runner_helper.read_csv(path)
        assert frame["r"].iloc[0] == pytest.approx(math.exp(-0.75))
        np.testing.assert_allclose(frame["fprime"], 1.0, atol=1e-8)

    def test_custom_boundary(self, cli_runner_helper, temp_dir):
        path = temp_dir / "custom.csv"
        args = ["solve", "--bc", "custom", "--r-left", "0.5", "--r-right", "1", "--f-left", "0.25"]
        args += ["--f-right", "1", "--samples", "11"]
        result = cli_runner_helper.invoke_to_file(args, path)
        assert result.exit_code == 0, result.output
        frame = cli_runner_helper.read_csv(path)
        # f = A r + B / r through (0.5, 0.25) and (1, 1)
        A, B = 7.0 / 6.0, -1.0 / 6.0
        exact = A * frame["r"] + B / frame["r"]
        np.testing.assert_allclose(frame["f"], exact, atol=1e-8)

    def test_summary_on_stderr(self, cli_runner_helper, temp_dir, ln2):
        path = temp_dir / "q.csv"
        result = cli_runner_helper.invoke(
            ["solve", "--a", repr(ln2), "--samples", "11", "--output", str(path)]
        )
        assert result.exit_code == 0
        assert "Shooting Summary" in result.output

    def test_custom_needs_every_flag(self, cli_runner_helper, temp_dir):
        result = cli_runner_helper.invoke_to_file(["solve", "--bc", "custom", "--r-left", "0.5"], temp_dir / "x.csv")
        assert result.exit_code == 1

    def test_half_bracket_is_rejected(self, cli_runner_helper, temp_dir):
        result = cli_runner_helper.invoke_to_file(
            ["solve", "--a", "1", "--bracket-lo", "0.5"], temp_dir / "x.csv"
        )
        assert result.exit_code == 1

    def test_existence_needs_modulus(self, cli_runner_helper, temp_dir):
        result = cli_runner_helper.invoke_to_file(["solve"], temp_dir / "x.csv")
        assert result.exit_code == 1

    def test_bad_bracket_is_a_diagnostic(self, cli_runner_helper, temp_dir):
        result = cli_runner_helper.invoke(
            ["solve", "--a", "1", "--bracket-lo", "5", "--bracket-hi", "6", "-o", str(temp_dir / "x.csv")]
        )
        assert result.exit_code == 2
        assert "Numerical diagnostic" in result.output

    def test_no_diffeomorphism_onto_poincare_disc(self, cli_runner_helper, temp_dir):
        """The hyperbolic disc has no boundary at finite distance to shoot at."""
        result = cli_runner_helper.invoke_to_file(["solve", "--metric", "poincare", "--a", "1"], temp_dir / "x.csv")
        assert result.exit_code == 2


class TestVerifyCommand:
    """verify: planar residuals."""

    def test_q_profile(self, cli_runner_helper, temp_dir, ln2):
        path = temp_dir / "verify.csv"
        result = cli_runner_helper.invoke_to_file(["verify", "--profile", "q", "--a", repr(ln2)], path)
        assert result.exit_code == 0, result.output
        frame = cli_runner_helper.read_csv(path)
        assert list(frame.columns) == ["x", "y", "residual"]
        assert len(frame) == 20
        assert frame["residual"].max() <= 1e-5

    def test_identity_profile_on_poincare_disc(self, cli_runner_helper, temp_dir):
        path = temp_dir / "verify.csv"
        result = cli_runner_helper.invoke_to_file(["verify", "--profile", "identity", "--metric", "poincare"], path)
        assert result.exit_code == 0, result.output
        assert cli_runner_helper.read_csv(path)["residual"].max() < 1e-6

    def test_identity_profile_euclidean(self, cli_runner_helper, temp_dir):
        path = temp_dir / "verify.csv"
        result = cli_runner_helper.invoke_to_file(
            ["verify", "--profile", "identity", "--points", "0.3+0.1j,0.5j,-0.4"], path
        )
        assert result.exit_code == 0, result.output
        frame = cli_runner_helper.read_csv(path)
        assert list(frame["y"]) == [0.1, 0.5, 0.0]
        assert frame["residual"].max() < 1e-8

    def test_shoot_profile(self, cli_runner_helper, temp_dir):
        path = temp_dir / "verify.csv"
        result = cli_runner_helper.invoke_to_file(
            ["verify", "--profile", "shoot", "--a", "1", "--tol", "1e-4"], path
        )
        assert result.exit_code == 0, result.output

    def test_tolerance_breach_exits_two(self, cli_runner_helper, temp_dir, ln2):
        result = cli_runner_helper.invoke(
            ["verify", "--profile", "q", "--a", repr(ln2), "--tol", "1e-14", "-o", str(temp_dir / "v.csv")]
        )
        assert result.exit_code == 2
        assert "max |residual|" in result.output

    def test_point_outside_support(self, cli_runner_helper, temp_dir):
        result = cli_runner_helper.invoke_to_file(
            ["verify", "--profile", "q", "--a", "1", "--points", "0.1"], temp_dir / "v.csv"
        )
        assert result.exit_code == 1


@pytest.mark.certificate
class TestCertifyCommand:
    """certify: JSON certificates and exit codes."""

    def test_thm2(self, cli_runner_helper, temp_dir):
        path = temp_dir / "thm2.json"
        result = cli_runner_helper.invoke_to_file(["certify", "--claim", "thm2", "--a", "1", "--c1", "0,0.1,1,10"], path)
        assert result.exit_code == 0, result.output
        document = cli_runner_helper.read_json(path)
        assert document["claim"] == "thm2-nonexistence"
        assert document["verdict"] == "PASS"
        assert len(document["points"]) == 4

    def test_thm3_alias_is_nonexistence(self, cli_runner_helper, temp_dir):
        path = temp_dir / "thm3.json"
        result = cli_runner_helper.invoke_to_file(["certify", "--claim", "thm3", "--c3", "1", "--c4", "0"], path)
        assert result.exit_code == 0, result.output
        assert cli_runner_helper.read_json(path)["claim"] == "thm3-nonexistence"

    def test_prop4_default_grid(self, cli_runner_helper, temp_dir):
        path = temp_dir / "prop4.json"
        result = cli_runner_helper.invoke_to_file(["certify", "--claim", "prop4"], path)
        assert result.exit_code == 0, result.output
        assert len(cli_runner_helper.read_json(path)["points"]) == 25

    def test_stdout_json(self, cli_runner_helper):
        result = cli_runner_helper.invoke(["certify", "--claim", "thm1", "--a", "1", "--c0", "1", "--quiet"])
        assert result.exit_code == 0
        assert '"claim": "thm1-nonexistence"' in result.output

    def test_fail_verdict_exits_two(self, cli_runner_helper, temp_dir):
        path = temp_dir / "fail.json"
        result = cli_runner_helper.invoke(
            ["certify", "--claim", "thm3", "--c3", "0", "--c4", "0", "--output", str(path)],
            env={"RSH_THM3_THRESHOLD": "1e7"},
        )
        assert result.exit_code == 2
        assert cli_runner_helper.read_json(path)["verdict"] == "FAIL"
        assert "FAIL" in result.output

    def test_constants_must_match_claim(self, cli_runner_helper, temp_dir):
        result = cli_runner_helper.invoke_to_file(["certify", "--claim", "thm1", "--a", "1", "--c5", "1"], temp_dir / "x.json")
        assert result.exit_code == 1

    def test_missing_modulus(self, cli_runner_helper, temp_dir):
        result = cli_runner_helper.invoke_to_file(["certify", "--claim", "thm1"], temp_dir / "x.json")
        assert result.exit_code == 1

    def test_out_of_range_constant(self, cli_runner_helper, temp_dir):
        result = cli_runner_helper.invoke_to_file(["certify", "--claim", "thm1", "--a", "1", "--c0", "-1"], temp_dir / "x.json")
        assert result.exit_code == 1

    def test_unknown_claim(self, cli_runner_helper, temp_dir):
        result = cli_runner_helper.invoke_to_file(["certify", "--claim", "lemma7"], temp_dir / "x.json")
        assert result.exit_code == 1


class TestRunDefaultsAndLogging:
    """--config files and log files together with real commands."""

    def test_config_file_feeds_solve(self, cli_runner_helper, temp_dir, ln2):
        config = temp_dir / "run.yaml"
        config.write_text(f"solve:\n  a: {ln2!r}\n  samples: 11\n")
        path = temp_dir / "q.csv"
        result = cli_runner_helper.invoke(["--config", str(config), "solve", "--output", str(path), "--quiet"])
        assert result.exit_code == 0, result.output
        assert len(cli_runner_helper.read_csv(path)) == 11

    def test_env_file_settings_reach_certify(self, cli_runner_helper, temp_dir):
        env_file = temp_dir / "strict.env"
        env_file.write_text("RSH_THM3_PROBE=0.5\n")
        path = temp_dir / "thm3.json"
        try:
            result = cli_runner_helper.invoke(
                ["--env-file", str(env_file), "certify", "--claim", "thm3", "--c3", "0", "--c4", "0", "-o", str(path), "-q"]
            )
        finally:
            import os

            os.environ.pop("RSH_THM3_PROBE", None)
        assert result.exit_code == 2
        assert cli_runner_helper.read_json(path)["params"]["r_probe"] == 0.5

    def test_operations_are_logged_to_file(self, cli_runner_helper, tmp_path):
        result = cli_runner_helper.invoke(["reduce", "--metric", "euclidean", "--env", "dev"])
        assert result.exit_code == 0
        logs = list((tmp_path / "logs").glob("rsharmonic-2*.log"))
        assert len(logs) == 1
        text = logs[0].read_text()
        assert "Starting reduce" in text
        assert "reduce completed" in text
