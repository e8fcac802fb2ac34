"""Utilities for end-to-end tests."""

import json
import math
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
import pytest
from typer.testing import CliRunner, Result

from rsharmonic.cli import app


class CliWorkflowHelper:
    """Drive multi-step command-line sessions the way a user would."""

    def __init__(self):
        self.runner = CliRunner()
        self.steps: List[Tuple[List[str], int, float]] = []

    def run(self, args: Sequence[str], env: Optional[Dict[str, str]] = None) -> Result:
        """Invoke one command and record its exit code and wall time."""
        argv = [str(a) for a in args]
        start = time.perf_counter()
        result = self.runner.invoke(app, argv, env=env)
        self.steps.append((argv, result.exit_code, time.perf_counter() - start))
        return result

    def run_to(self, args: Sequence[str], path: Path) -> Result:
        """Invoke quietly with the output sent to ``path``."""
        return self.run(list(args) + ["--output", str(path), "--quiet"])

    @staticmethod
    def read_csv(path: Path) -> pd.DataFrame:
        return pd.read_csv(path)

    @staticmethod
    def read_json(path: Path) -> Dict[str, Any]:
        return json.loads(path.read_text(encoding="utf-8"))

    def failed_steps(self) -> List[Tuple[List[str], int]]:
        return [(argv, code) for argv, code, _ in self.steps if code != 0]

    def last_duration(self) -> float:
        return self.steps[-1][2]

    def run_session(self, temp_dir: Path, a: float) -> Dict[str, Path]:
        """reduce, solve, verify, certify and sample for one annulus modulus.

        Returns the files written, keyed by command.
        """
        files = {
            "solve": temp_dir / "profile.csv",
            "verify": temp_dir / "residuals.csv",
            "certify": temp_dir / "certificate.json",
            "sample": temp_dir / "q.csv",
        }
        self.run(["reduce", "--metric", "euclidean", "--quiet"])
        self.run_to(["solve", "--a", repr(a)], files["solve"])
        self.run_to(["verify", "--profile", "q", "--a", repr(a)], files["verify"])
        self.run_to(["certify", "--claim", "thm3-existence", "--a", repr(a)], files["certify"])
        self.run_to(
            ["sample", "--family", "q_exact", "--a", repr(a)]
            + ["--start", repr(math.exp(-a)), "--stop", "1", "--num", "11"],
            files["sample"],
        )
        return files


@pytest.fixture
def cli_workflow_helper() -> CliWorkflowHelper:
    """Provide a recording CLI runner."""
    return CliWorkflowHelper()


def e2e_test(func):
    """Decorator to mark a function as an end-to-end test."""
    return pytest.mark.e2e(func)


def slow_e2e_test(func):
    """Decorator to mark a function as a slow end-to-end test."""
    return pytest.mark.e2e(pytest.mark.slow(func))


def acceptance_test(func):
    """Decorator to mark a function as an acceptance check."""
    return pytest.mark.e2e(pytest.mark.acceptance(func))
