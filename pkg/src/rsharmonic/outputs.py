"""CSV, JSON and run-defaults file I/O."""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

import jsonschema
import pandas as pd
import typer
import yaml
from scipy.interpolate import CubicSpline

from .exceptions import ConfigError
from .logging_config import get_logger
from .models import Certificate, ProfileSample
from .radial import SecondOrderODE

logger = get_logger(__name__)

CSV_OPTIONS: Dict[str, Any] = {
    "index": False,
    "float_format": "%.15g",
    "lineterminator": "\n",
}

_QUANTITY = {"type": ["boolean", "integer", "number", "string"]}

CERTIFICATE_SCHEMA: Dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "rsharmonic certificate",
    "type": "object",
    "required": ["claim", "params", "points", "verdict", "tolerances", "narrative"],
    "additionalProperties": False,
    "properties": {
        "claim": {
            "enum": [
                "thm1-nonexistence",
                "thm2-nonexistence",
                "thm3-nonexistence",
                "thm3-existence",
                "prop4-nonexistence",
            ]
        },
        "params": {"type": "object"},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["constants", "quantities", "verdict"],
                "additionalProperties": False,
                "properties": {
                    "constants": {
                        "type": "object",
                        "additionalProperties": {"type": "number"},
                    },
                    "quantities": {"type": "object", "additionalProperties": _QUANTITY},
                    "verdict": {"enum": ["PASS", "FAIL"]},
                },
            },
        },
        "verdict": {"enum": ["PASS", "FAIL"]},
        "tolerances": {"type": "object", "additionalProperties": {"type": "number"}},
        "narrative": {"type": "string", "minLength": 1, "pattern": "^[^\\n]+$"},
    },
}


def write_csv(frame: pd.DataFrame, path: Optional[Union[str, Path]] = None) -> str:
    """Write ``frame`` as CSV to ``path``, or to stdout when no path is given."""
    text = frame.to_csv(**CSV_OPTIONS)
    if path is None:
        typer.echo(text, nl=False)
    else:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        logger.info("CSV written", path=str(target), rows=len(frame))
    return text


def profile_frame(ode: SecondOrderODE, profile: ProfileSample) -> pd.DataFrame:
    """Columns r, f, fprime, residual_1d.

    The residual uses f'' taken from a not-a-knot cubic spline through the sampled
    f', third-order in the spacing, so it measures how consistent the samples are
    with the ODE.
    """
    frame = profile.to_frame().drop(columns="fsecond", errors="ignore")
    fpp = CubicSpline(profile.r, profile.fprime).derivative()(profile.r)
    frame["residual_1d"] = [
        ode.residual(float(r), float(f), float(fp), float(s))
        for r, f, fp, s in zip(profile.r, profile.f, profile.fprime, fpp)
    ]
    return frame


def validate_certificate(document: Dict[str, Any]) -> None:
    """Raise jsonschema.ValidationError if ``document`` breaks the certificate schema."""
    jsonschema.validate(instance=document, schema=CERTIFICATE_SCHEMA)


def certificate_json(certificate: Certificate) -> str:
    document = certificate.to_document()
    validate_certificate(document)
    return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_certificate_json(
    certificate: Certificate, path: Optional[Union[str, Path]] = None
) -> str:
    """Serialize a validated certificate to ``path`` or stdout."""
    text = certificate_json(certificate)
    if path is None:
        typer.echo(text, nl=False)
    else:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
        logger.info(
            "Certificate written",
            path=str(target),
            claim=certificate.claim.value,
            verdict=certificate.verdict.value,
        )
    return text


def _parse_key_values(text: str, source: Path) -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ConfigError("expected key=value", path=str(source), line=number)
        values[key.strip()] = value.strip()
    return values


def _flatten(mapping: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in mapping.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, list):
            flat[name] = ",".join(str(v) for v in value)
        else:
            flat[name] = value
    return flat


def load_run_defaults(path: Union[str, Path], commands: Iterable[str]) -> Dict[str, Dict[str, Any]]:
    """Read a key=value or YAML file into a click ``default_map``.

    ``a=1`` applies to every command, ``solve.a=0.69`` only to ``solve``.
    Dashes in keys become underscores so that ``bracket-lo`` matches the
    ``bracket_lo`` parameter.

    Raises:
        ConfigError: unreadable file, bad syntax or an unknown command scope.
    """
    source = Path(path)
    try:
        text = source.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}", path=str(source)) from exc

    if source.suffix.lower() in (".yaml", ".yml"):
        try:
            data = yaml.safe_load(text) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"invalid YAML: {exc}", path=str(source)) from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a mapping", path=str(source))
        flat = _flatten(data)
    else:
        flat = _parse_key_values(text, source)

    known = list(commands)
    default_map: Dict[str, Dict[str, Any]] = {name: {} for name in known}
    shared: Dict[str, Any] = {}
    for key, value in flat.items():
        scope, dot, name = key.rpartition(".")
        name = name.replace("-", "_")
        if not dot:
            shared[name] = value
        elif scope in default_map:
            default_map[scope][name] = value
        else:
            raise ConfigError("unknown command scope", key=key, commands=known)
    for name in known:
        default_map[name] = {**shared, **default_map[name]}
    logger.debug("Loaded run defaults", path=str(source), keys=sorted(flat))
    return {name: values for name, values in default_map.items() if values}


__all__ = [
    "CSV_OPTIONS",
    "CERTIFICATE_SCHEMA",
    "write_csv",
    "profile_frame",
    "validate_certificate",
    "certificate_json",
    "write_certificate_json",
    "load_run_defaults",
]
