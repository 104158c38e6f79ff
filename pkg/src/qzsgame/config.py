"""JSON game configuration: parsing, validation, defaults.

Schema (all lengths and values validated, unknown keys rejected):

    {
      "payoff_matrix":        [[2, 3, -2], [-2, 4, 2]],   required
      "schmidt_coefficients": [1, 0],                     required
      "resolution":           201,                        optional
      "output_format":        "kv",                       optional: "kv" | "csv"
      "phase_sign":           1,                          optional: 1 | -1
      "tolerances": {                                     optional
        "gradient":       1e-8,
        "response_scale": 1e-6,
        "dedup_radius":   1e-4
      }
    }

The coefficient vector must already be normalized (sum of squares 1 within
1e-9) and nonnegative; nothing is renormalized on the user's behalf.  Its
length must equal min(rows, cols) of the payoff matrix.
"""

import json
from dataclasses import dataclass, field

from .engine import PayoffMatrix, SchmidtState
from .errors import ConfigParseError, ConfigValidationError, QzsError

__all__ = ["GameConfig", "Tolerances", "load_config", "parse_config"]

_FORMATS = ("kv", "csv")


@dataclass(frozen=True)
class Tolerances:
    """Search tolerances; defaults match the equilibrium module."""

    gradient: float = 1e-8
    response_scale: float = 1e-6
    dedup_radius: float = 1e-4


@dataclass(frozen=True)
class GameConfig:
    """A fully validated scenario: game, shared state, run options."""

    game: PayoffMatrix
    state: SchmidtState
    resolution: int = 201
    output_format: str = "kv"
    phase_sign: int = 1
    tolerances: Tolerances = field(default_factory=Tolerances)


def _require(cond, message):
    if not cond:
        raise ConfigValidationError(message)


def _build_matrix(raw):
    _require(isinstance(raw, list) and raw, "payoff_matrix: need a nonempty list of rows")
    _require(
        all(isinstance(r, list) for r in raw),
        "payoff_matrix: rows must be lists of numbers",
    )
    width = len(raw[0])
    _require(
        all(len(r) == width for r in raw),
        "payoff_matrix: rows have unequal lengths (matrix must be rectangular)",
    )
    for r in raw:
        for v in r:
            _require(
                isinstance(v, (int, float)) and not isinstance(v, bool),
                f"payoff_matrix: entry {v!r} is not a number",
            )
    try:
        return PayoffMatrix(raw)
    except QzsError as err:
        raise ConfigValidationError(f"payoff_matrix: {err}") from err


def _build_state(raw, game):
    _require(
        isinstance(raw, list) and raw, "schmidt_coefficients: need a nonempty list"
    )
    for v in raw:
        _require(
            isinstance(v, (int, float)) and not isinstance(v, bool),
            f"schmidt_coefficients: entry {v!r} is not a number",
        )
    expected = min(game.rows, game.cols)
    _require(
        len(raw) == expected,
        f"schmidt_coefficients: got {len(raw)} entries, expected min(rows, cols) "
        f"= {expected} for a {game.rows}x{game.cols} payoff matrix",
    )
    try:
        return SchmidtState(raw)
    except QzsError as err:
        raise ConfigValidationError(f"schmidt_coefficients: {err}") from err


def _build_tolerances(raw):
    if raw is None:
        return Tolerances()
    _require(isinstance(raw, dict), "tolerances: must be an object")
    known = {"gradient", "response_scale", "dedup_radius"}
    for key in raw:
        _require(key in known, f"tolerances: unknown key {key!r}")
        v = raw[key]
        _require(
            isinstance(v, (int, float)) and not isinstance(v, bool) and v > 0,
            f"tolerances.{key}: must be a positive number, got {v!r}",
        )
    return Tolerances(**{k: float(v) for k, v in raw.items()})


def parse_config(text):
    """Parse and validate a JSON config document into a GameConfig.

    Raises ConfigParseError (with line and column) for malformed JSON and
    ConfigValidationError (naming the offending field) for schema
    violations.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigParseError(
            f"invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}"
        ) from err
    _require(isinstance(doc, dict), "top level: must be a JSON object")
    known = {
        "payoff_matrix",
        "schmidt_coefficients",
        "resolution",
        "output_format",
        "phase_sign",
        "tolerances",
    }
    for key in doc:
        _require(key in known, f"unknown key {key!r}")
    _require("payoff_matrix" in doc, "payoff_matrix: missing required key")
    _require("schmidt_coefficients" in doc, "schmidt_coefficients: missing required key")

    game = _build_matrix(doc["payoff_matrix"])
    state = _build_state(doc["schmidt_coefficients"], game)

    resolution = doc.get("resolution", 201)
    _require(
        isinstance(resolution, int) and not isinstance(resolution, bool),
        f"resolution: must be an integer, got {resolution!r}",
    )
    _require(resolution >= 2, f"resolution: must be at least 2, got {resolution}")

    output_format = doc.get("output_format", "kv")
    _require(
        output_format in _FORMATS,
        f"output_format: must be one of {_FORMATS}, got {output_format!r}",
    )

    phase_sign = doc.get("phase_sign", 1)
    _require(
        phase_sign in (1, -1) and not isinstance(phase_sign, bool),
        f"phase_sign: must be 1 or -1, got {phase_sign!r}",
    )

    return GameConfig(
        game=game,
        state=state,
        resolution=resolution,
        output_format=output_format,
        phase_sign=phase_sign,
        tolerances=_build_tolerances(doc.get("tolerances")),
    )


def load_config(path):
    """Read and parse a JSON config file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
