"""Utilities for integration tests."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
import pytest
from typer.testing import CliRunner, Result

from rsharmonic.cli import app
from rsharmonic.models import Certificate
from rsharmonic.outputs import validate_certificate


class CertificateHelper:
    """Checks shared by certificate tests."""

    @staticmethod
    def assert_valid(certificate: Certificate) -> Dict[str, Any]:
        """Validate against the JSON schema and return the document."""
        document = certificate.to_document()
        validate_certificate(document)
        return document

    @staticmethod
    def point_for(certificate: Certificate, **constants: float):
        """The sweep point whose constants include ``constants``."""
        for point in certificate.points:
            if all(point.constants.get(k) == v for k, v in constants.items()):
                return point
        raise AssertionError(f"no sweep point with {constants}")

    @staticmethod
    def quantities(certificate: Certificate, name: str) -> List[Any]:
        return [p.quantities[name] for p in certificate.points if name in p.quantities]


class CliRunnerHelper:
    """Run rsharmonic commands and read what they wrote."""

    def __init__(self):
        self.runner = CliRunner()

    def invoke(self, args: Sequence[str], env: Optional[Dict[str, str]] = None) -> Result:
        return self.runner.invoke(app, [str(a) for a in args], env=env)

    def invoke_to_file(self, args: Sequence[str], path: Path) -> Result:
        """Run with --output path and --quiet so stdout and stderr stay empty."""
        return self.invoke(list(args) + ["--output", str(path), "--quiet"])

    @staticmethod
    def read_csv(path: Path) -> pd.DataFrame:
        return pd.read_csv(path)

    @staticmethod
    def read_json(path: Path) -> Dict[str, Any]:
        return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture
def certificate_helper() -> CertificateHelper:
    """Provide certificate checks."""
    return CertificateHelper()


@pytest.fixture
def cli_runner_helper() -> CliRunnerHelper:
    """Provide a CLI runner."""
    return CliRunnerHelper()


def integration_test(func):
    """Decorator to mark a function as an integration test."""
    return pytest.mark.integration(func)


def slow_integration_test(func):
    """Decorator to mark a function as a slow integration test."""
    return pytest.mark.slow(pytest.mark.integration(func))
