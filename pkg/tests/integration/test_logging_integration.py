"""Integration tests for the log files a command leaves behind."""

import json

import pytest
from loguru import logger

pytestmark = [pytest.mark.integration, pytest.mark.cli]


def _flush() -> None:
    # removing the sinks drains the enqueued JSON-lines writer
    logger.remove()


class TestCLILoggingIntegration:
    """Sinks, levels and correlation ids as seen from the command line."""

    def setup_method(self):
        self.reduce = ["reduce", "--metric", "euclidean"]

    def _main_log(self, tmp_path) -> str:
        logs = list((tmp_path / "logs").glob("rsharmonic-2*.log"))
        assert len(logs) == 1
        return logs[0].read_text()

    def test_verbose_flag_logs_debug_records(self, cli_runner_helper, tmp_path):
        result = cli_runner_helper.invoke(self.reduce + ["--verbose"])
        assert result.exit_code == 0
        _flush()
        assert "Logging initialized" in self._main_log(tmp_path)

    def test_quiet_flag_keeps_only_errors(self, cli_runner_helper, tmp_path):
        result = cli_runner_helper.invoke(self.reduce + ["--quiet", "--env", "dev"])
        assert result.exit_code == 0
        _flush()
        assert "Starting reduce" not in self._main_log(tmp_path)

    def test_environment_override_disables_file_sink(self, cli_runner_helper, tmp_path, monkeypatch):
        monkeypatch.setenv("RSH_LOG_FILE", "false")
        result = cli_runner_helper.invoke(self.reduce + ["--env", "dev"])
        assert result.exit_code == 0
        _flush()
        assert list((tmp_path / "logs").glob("rsharmonic-2*.log")) == []

    def test_structured_records_share_operation_id(self, cli_runner_helper, tmp_path):
        result = cli_runner_helper.invoke(self.reduce + ["--env", "dev"])
        assert result.exit_code == 0
        _flush()
        files = list((tmp_path / "logs").glob("rsharmonic-structured-*.jsonl"))
        assert len(files) == 1
        records = [
            json.loads(line)["record"]
            for line in files[0].read_text().splitlines()
            if line.strip()
        ]
        by_message = {r["message"]: r for r in records}
        start = by_message["Starting reduce"]
        end = by_message["reduce completed"]
        assert start["extra"]["correlation_id"] == end["extra"]["correlation_id"]
        assert end["extra"]["operation"] == "reduce"

    def test_failures_reach_error_log(self, cli_runner_helper, tmp_path):
        result = cli_runner_helper.invoke(["solve", "--a", "1", "--bracket-lo", "10", "--bracket-hi", "20", "--quiet"])
        assert result.exit_code == 2
        _flush()
        errors = list((tmp_path / "logs").glob("rsharmonic-error-*.log"))
        assert len(errors) == 1
        text = errors[0].read_text()
        assert "solve failed" in text
        assert "exit_code" in text

    @pytest.mark.parametrize("environment", ["local", "dev", "test", "stage", "prod"])
    def test_every_profile_runs(self, cli_runner_helper, environment):
        result = cli_runner_helper.invoke(self.reduce + ["--env", environment])
        assert result.exit_code == 0
