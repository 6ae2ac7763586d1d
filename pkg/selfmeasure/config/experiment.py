"""Experiment configuration: validation of parsed documents and the inverse writer."""

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from selfmeasure.errors import ConfigError
from selfmeasure.measurement import MeasurementModel
from selfmeasure.states import complex_to_pair
from selfmeasure.stochastic.rng import SEED_LIMIT
from .parser import parse_document
from .writer import dump

logger = logging.getLogger(__name__)

# |norm^2 - 1| bands for the amplitudes field.
SILENT_NORMALIZE_TOL = 1e-6
MAX_NORMALIZE_TOL = 1e-2
EXACT_NORM_TOL = 1e-10

DEFAULT_OUTPUT_PATH = "selfmeasure-out.txt"


class Command(Enum):
    SIMULATE = "simulate"
    RESTRICT = "restrict"
    ALGEBRA_INFO = "algebra-info"
    BREUER = "breuer"
    INTERFERENCE = "interference"
    EVOLVE = "evolve"


@dataclass(frozen=True)
class ExperimentConfig:
    command: Command
    amplitudes: Tuple[complex, complex]
    pointer_eigenvalues: Tuple[float, float, float] = (0.0, 1.0, 2.0)
    s_eigenvalues: Tuple[float, float] = (1.0, -1.0)
    n_events: int = 1000
    seed: int = 0
    times: Optional[Tuple[float, ...]] = None
    t0: float = 0.0
    t1: float = 1.0
    workers: int = 1
    output_path: str = DEFAULT_OUTPUT_PATH
    renormalized: bool = field(default=False, compare=False)

    def to_model(self) -> MeasurementModel:
        return MeasurementModel(
            amplitudes=self.amplitudes,
            s_eigenvalues=self.s_eigenvalues,
            pointer_eigenvalues=self.pointer_eigenvalues,
            t0=self.t0,
            t1=self.t1,
        )

    def with_overrides(
        self,
        seed: Optional[int] = None,
        n_events: Optional[int] = None,
        workers: Optional[int] = None,
        output_path: Optional[str] = None,
    ) -> "ExperimentConfig":
        """Copy with command-line overrides applied and re-validated."""
        changes: Dict[str, Any] = {}
        errors: List[str] = []
        for name, value in (("seed", seed), ("n_events", n_events), ("workers", workers),
                            ("output_path", output_path)):
            if value is not None:
                _check_field(name, value, changes, errors)
        if errors:
            raise ConfigError("; ".join(errors), errors)
        return replace(self, **changes)


# ----------------------------------------------------------------------
# Field checkers: each stores the converted value or appends an error
# ----------------------------------------------------------------------

def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_integer(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _real(name: str, value: Any, errors: List[str]) -> Optional[float]:
    if not _is_number(value) or not math.isfinite(value):
        errors.append(f"{name}: expected a finite number, got {value!r}")
        return None
    return float(value)


def _real_list(name: str, value: Any, length: Optional[int], errors: List[str]) -> Optional[Tuple[float, ...]]:
    if not isinstance(value, list):
        errors.append(f"{name}: expected a list of numbers, got {value!r}")
        return None
    if length is not None and len(value) != length:
        errors.append(f"{name}: expected {length} numbers, got {len(value)}")
        return None
    before = len(errors)
    reals = [_real(f"{name}[{k}]", v, errors) for k, v in enumerate(value)]
    if len(errors) > before:
        return None
    return tuple(reals)


def _check_amplitudes(value: Any, out: Dict[str, Any], errors: List[str]):
    if not isinstance(value, list) or len(value) != 2:
        errors.append(f"amplitudes: expected two [re, im] pairs, got {value!r}")
        return
    amplitudes = []
    for k, pair in enumerate(value):
        parts = _real_list(f"amplitudes[{k}]", pair, 2, errors)
        if parts is None:
            return
        amplitudes.append(complex(parts[0], parts[1]))

    norm_sq = sum(abs(a) ** 2 for a in amplitudes)
    deviation = abs(norm_sq - 1.0)
    if norm_sq == 0.0 or deviation > MAX_NORMALIZE_TOL:
        errors.append(f"amplitudes: norm^2 = {norm_sq:.12g} is too far from 1 to normalize")
        return
    if deviation > EXACT_NORM_TOL:
        scale = 1.0 / math.sqrt(norm_sq)
        amplitudes = [a * scale for a in amplitudes]
        if deviation > SILENT_NORMALIZE_TOL:
            out["renormalized"] = True
            logger.warning("amplitudes renormalized (norm^2 was %.12g)", norm_sq)
    out["amplitudes"] = tuple(amplitudes)


def _check_command(value: Any, out: Dict[str, Any], errors: List[str]):
    try:
        out["command"] = Command(value)
    except ValueError:
        choices = ", ".join(c.value for c in Command)
        errors.append(f"command: unknown command {value!r} (expected one of {choices})")


def _check_pointer_eigenvalues(value: Any, out: Dict[str, Any], errors: List[str]):
    values = _real_list("pointer_eigenvalues", value, 3, errors)
    if values is None:
        return
    if len(set(values)) != 3:
        errors.append(f"pointer_eigenvalues: values must be distinct, got {list(values)}")
        return
    out["pointer_eigenvalues"] = values


def _check_s_eigenvalues(value: Any, out: Dict[str, Any], errors: List[str]):
    values = _real_list("s_eigenvalues", value, 2, errors)
    if values is not None:
        out["s_eigenvalues"] = values


def _check_n_events(value: Any, out: Dict[str, Any], errors: List[str]):
    if not _is_integer(value) or value < 1:
        errors.append(f"n_events: expected a positive integer, got {value!r}")
        return
    out["n_events"] = value


def _check_seed(value: Any, out: Dict[str, Any], errors: List[str]):
    if not _is_integer(value) or not 0 <= value < SEED_LIMIT:
        errors.append(f"seed: expected an integer in [0, 2^64), got {value!r}")
        return
    out["seed"] = value


def _check_times(value: Any, out: Dict[str, Any], errors: List[str]):
    values = _real_list("times", value, None, errors)
    if values is None:
        return
    if not values:
        errors.append("times: list is empty")
        return
    out["times"] = values


def _check_time_point(name: str) -> Callable[[Any, Dict[str, Any], List[str]], None]:
    def check(value: Any, out: Dict[str, Any], errors: List[str]):
        real = _real(name, value, errors)
        if real is not None:
            out[name] = real
    return check


def _check_workers(value: Any, out: Dict[str, Any], errors: List[str]):
    if not _is_integer(value) or value < 1:
        errors.append(f"workers: expected a positive integer, got {value!r}")
        return
    out["workers"] = value


def _check_output_path(value: Any, out: Dict[str, Any], errors: List[str]):
    if not isinstance(value, str) or not value:
        errors.append(f"output_path: expected a non-empty string, got {value!r}")
        return
    out["output_path"] = value


FIELD_CHECKERS: Dict[str, Callable[[Any, Dict[str, Any], List[str]], None]] = {
    "command": _check_command,
    "amplitudes": _check_amplitudes,
    "pointer_eigenvalues": _check_pointer_eigenvalues,
    "s_eigenvalues": _check_s_eigenvalues,
    "n_events": _check_n_events,
    "seed": _check_seed,
    "times": _check_times,
    "t0": _check_time_point("t0"),
    "t1": _check_time_point("t1"),
    "workers": _check_workers,
    "output_path": _check_output_path,
}

REQUIRED_FIELDS = ("command", "amplitudes")


def _check_field(name: str, value: Any, out: Dict[str, Any], errors: List[str]):
    FIELD_CHECKERS[name](value, out, errors)


# ----------------------------------------------------------------------
# Public API
# ----------------------------------------------------------------------

def config_from_mapping(data: Dict[str, Any]) -> ExperimentConfig:
    """Validate a plain mapping, reporting every bad field at once."""
    errors: List[str] = []
    values: Dict[str, Any] = {}

    for key in data:
        if key not in FIELD_CHECKERS:
            errors.append(f"{key}: unknown field")
    for name in REQUIRED_FIELDS:
        if name not in data:
            errors.append(f"{name}: missing required field")
    for name, value in data.items():
        if name in FIELD_CHECKERS:
            _check_field(name, value, values, errors)

    if values.get("command") == Command.EVOLVE and "times" not in data:
        errors.append("times: required for the evolve command")
    t0 = values.get("t0", 0.0)
    t1 = values.get("t1", 1.0)
    if t1 < t0:
        errors.append(f"t1: interaction ends before it starts (t0={t0}, t1={t1})")

    if errors:
        raise ConfigError(f"{len(errors)} invalid field(s): " + "; ".join(errors), errors)
    return ExperimentConfig(**values)


def parse_config(document: str) -> ExperimentConfig:
    """Parse and validate an experiment document."""
    return config_from_mapping(parse_document(document).to_dict())


def config_to_mapping(config: ExperimentConfig) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "command": config.command.value,
        "amplitudes": [complex_to_pair(a) for a in config.amplitudes],
        "pointer_eigenvalues": list(config.pointer_eigenvalues),
        "s_eigenvalues": list(config.s_eigenvalues),
        "n_events": config.n_events,
        "seed": config.seed,
    }
    if config.times is not None:
        data["times"] = list(config.times)
    data.update({
        "t0": config.t0,
        "t1": config.t1,
        "workers": config.workers,
        "output_path": config.output_path,
    })
    return data


def serialize_config(config: ExperimentConfig) -> str:
    """Document text that parses back to an equal config."""
    return dump(config_to_mapping(config))


def config_summary(config: ExperimentConfig) -> List[str]:
    """Human-readable lines describing a validated config."""
    probabilities = np.abs(np.array(config.amplitudes)) ** 2
    lines = [
        f"command: {config.command.value}",
        "amplitudes: " + ", ".join(f"{a.real:.6g}{a.imag:+.6g}i" for a in config.amplitudes),
        "probabilities: " + ", ".join(f"{p:.6g}" for p in probabilities),
        f"n_events: {config.n_events}  seed: {config.seed}  workers: {config.workers}",
        f"interaction: [{config.t0:g}, {config.t1:g}]",
        f"output: {config.output_path}",
    ]
    if config.times is not None:
        lines.append(f"times: {len(config.times)} points")
    if config.renormalized:
        lines.append("warning: amplitudes were renormalized")
    return lines
