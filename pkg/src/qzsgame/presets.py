"""Built-in scenario presets with known expected outcomes.

Six scenarios, one per combination of payoff table and shared state that
has a known answer: the 2x3 table with both product states and the
uniformly entangled state, and the 3x3 table with a product state, the
uniformly entangled state, and a two-term entangled state.  Each preset
bundles the scenario config with its expected equilibrium, the classical
baseline, and the comparison between the two, at the tolerances used by
``reproduce``.
"""

from dataclasses import dataclass

import numpy as np

from .classical import solve_zero_sum
from .config import GameConfig
from .engine import PayoffMatrix, SchmidtState
from .equilibrium import find_equilibrium

__all__ = [
    "ExpectedOutcome",
    "PresetResult",
    "PRESETS",
    "ScenarioPreset",
    "evaluate_preset",
    "get_preset",
]

COMPARISON_TOL = 1e-6

_TABLE_2X3 = [[2.0, 3.0, -2.0], [-2.0, 4.0, 2.0]]
_TABLE_3X3 = [[2.0, 0.0, 2.0], [0.0, 3.0, 1.0], [1.0, 2.0, 1.0]]


@dataclass(frozen=True)
class ExpectedOutcome:
    """What a preset run must produce to pass."""

    status: str
    point: tuple | None
    value: float | None
    classical_value: float
    comparison: str  # "equal" | "differs" | "no-equilibrium"
    point_tol: float = 1e-6
    value_tol: float = 1e-9
    classical_tol: float = 1e-9


@dataclass(frozen=True)
class ScenarioPreset:
    name: str
    description: str
    config: GameConfig
    expected: ExpectedOutcome


@dataclass(frozen=True)
class PresetResult:
    """Outcome of running one preset against its expectations."""

    name: str
    passed: bool
    checks: tuple  # (label, ok, detail) triples
    report: object
    classical: object
    comparison: str


def _config(table, coeffs):
    return GameConfig(game=PayoffMatrix(table), state=SchmidtState(coeffs))


_H = 1.0 / np.sqrt(2.0)
_T = 1.0 / np.sqrt(3.0)

PRESETS = {}
for _preset in [
    ScenarioPreset(
        name="fig1",
        description="2x3 game, product state on the first basis pair",
        config=_config(_TABLE_2X3, [1.0, 0.0]),
        expected=ExpectedOutcome(
            status="interior-saddle",
            point=(10.0 / 13.0, 5.0 / 13.0),
            value=14.0 / 13.0,
            classical_value=0.0,
            comparison="differs",
        ),
    ),
    ScenarioPreset(
        name="fig1-alt",
        description="2x3 game, product state on the second basis pair",
        config=_config(_TABLE_2X3, [0.0, 1.0]),
        expected=ExpectedOutcome(
            status="boundary-equilibrium",
            point=None,
            value=0.0,
            classical_value=0.0,
            comparison="equal",
        ),
    ),
    ScenarioPreset(
        name="fig1-entangled",
        description="2x3 game, uniformly entangled state",
        config=_config(_TABLE_2X3, [_H, _H]),
        expected=ExpectedOutcome(
            status="none",
            point=None,
            value=None,
            classical_value=0.0,
            comparison="no-equilibrium",
        ),
    ),
    ScenarioPreset(
        name="fig2",
        description="3x3 game, product state on the first basis pair",
        config=_config(_TABLE_3X3, [1.0, 0.0, 0.0]),
        expected=ExpectedOutcome(
            status="interior-saddle",
            point=(5.0 / 9.0, 1.0 / 3.0),
            value=4.0 / 3.0,
            classical_value=4.0 / 3.0,
            comparison="equal",
        ),
    ),
    ScenarioPreset(
        name="fig3",
        description="3x3 game, uniformly entangled state",
        config=_config(_TABLE_3X3, [_T, _T, _T]),
        expected=ExpectedOutcome(
            status="none",
            point=None,
            value=None,
            classical_value=4.0 / 3.0,
            comparison="no-equilibrium",
        ),
    ),
    ScenarioPreset(
        name="fig3-partial",
        description="3x3 game, two-term entangled state",
        config=_config(_TABLE_3X3, [_H, _H, 0.0]),
        expected=ExpectedOutcome(
            status="none",
            point=None,
            value=None,
            classical_value=4.0 / 3.0,
            comparison="no-equilibrium",
        ),
    ),
]:
    PRESETS[_preset.name] = _preset


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; available: {', '.join(PRESETS)}"
        ) from None


def compare_values(quantum_value, classical_value):
    """Comparison flag between the restricted-game value and the classical one."""
    if quantum_value is None:
        return "no-equilibrium"
    if abs(quantum_value - classical_value) <= COMPARISON_TOL:
        return "equal"
    return "differs"


def evaluate_preset(preset):
    """Run one preset end to end and grade it against its expectations."""
    cfg = preset.config
    report = find_equilibrium(
        cfg.game,
        cfg.state,
        grad_tol=cfg.tolerances.gradient,
        tol_scale=cfg.tolerances.response_scale,
        phase_sign=cfg.phase_sign,
    )
    classical = solve_zero_sum(cfg.game)
    comparison = compare_values(report.value, classical.value)
    exp = preset.expected

    checks = []
    checks.append(
        (
            "status",
            report.status == exp.status,
            f"got {report.status}, expected {exp.status}",
        )
    )
    if exp.point is not None:
        ok = report.point is not None and (
            abs(report.point[0] - exp.point[0]) <= exp.point_tol
            and abs(report.point[1] - exp.point[1]) <= exp.point_tol
        )
        checks.append(
            ("point", ok, f"got {report.point}, expected {exp.point} within {exp.point_tol}")
        )
    if exp.value is not None:
        ok = report.value is not None and abs(report.value - exp.value) <= exp.value_tol
        checks.append(
            ("value", ok, f"got {report.value}, expected {exp.value} within {exp.value_tol}")
        )
    checks.append(
        (
            "classical",
            abs(classical.value - exp.classical_value) <= exp.classical_tol,
            f"got {classical.value}, expected {exp.classical_value} "
            f"within {exp.classical_tol}",
        )
    )
    checks.append(
        (
            "comparison",
            comparison == exp.comparison,
            f"got {comparison}, expected {exp.comparison}",
        )
    )
    return PresetResult(
        name=preset.name,
        passed=all(ok for _, ok, _ in checks),
        checks=tuple(checks),
        report=report,
        classical=classical,
        comparison=comparison,
    )
