"""Zero-sum quantum matrix games with restricted one-parameter strategies.

Each player's move is a single unitary U(p) from a one-parameter family
acting on their side of a shared Schmidt-diagonal state; measuring both
sides yields a joint outcome distribution over the payoff table.  The
package evaluates the resulting payoff surface P_A(p, q), hunts saddle
points (the game's equilibria), and compares against the classical
mixed-strategy solution of the same table.
"""

from .classical import (
    ClassicalSolution,
    fictitious_play,
    minimax_violation,
    solve_zero_sum,
)
from .config import GameConfig, Tolerances, load_config, parse_config
from .engine import (
    AmplitudeMatrix,
    PayoffMatrix,
    ProbabilityMatrix,
    SchmidtState,
    evaluation_domain,
    evolve,
    outcome_weights,
    payoff,
    payoff_at,
    payoff_grid,
    probability_matrix,
)
from .equilibrium import (
    ConsistencyScan,
    EquilibriumReport,
    PayoffSurface,
    classify,
    consistency_scan,
    find_critical_points,
    find_equilibrium,
    gradient,
    sample_surface,
)
from .errors import (
    ConfigError,
    ConfigParseError,
    ConfigValidationError,
    DomainError,
    InfeasibleParameterError,
    InvalidDimensionError,
    InvalidStateError,
    QzsError,
    ShapeMismatchError,
)
from .presets import PRESETS, ScenarioPreset, evaluate_preset, get_preset
from .reporting import VERSION
from .strategy_space import (
    FeasibleDomain,
    MixingMatrix,
    RestrictedUnitary,
    build_mixing_matrix,
    build_unitary,
    feasible_domain,
    theta,
)

__version__ = VERSION

__all__ = [
    "AmplitudeMatrix",
    "ClassicalSolution",
    "ConfigError",
    "ConfigParseError",
    "ConfigValidationError",
    "ConsistencyScan",
    "DomainError",
    "EquilibriumReport",
    "FeasibleDomain",
    "GameConfig",
    "InfeasibleParameterError",
    "InvalidDimensionError",
    "InvalidStateError",
    "MixingMatrix",
    "PayoffMatrix",
    "PayoffSurface",
    "PRESETS",
    "ProbabilityMatrix",
    "QzsError",
    "RestrictedUnitary",
    "ScenarioPreset",
    "SchmidtState",
    "ShapeMismatchError",
    "Tolerances",
    "build_mixing_matrix",
    "build_unitary",
    "classify",
    "consistency_scan",
    "evaluate_preset",
    "evaluation_domain",
    "evolve",
    "feasible_domain",
    "fictitious_play",
    "find_critical_points",
    "find_equilibrium",
    "get_preset",
    "gradient",
    "load_config",
    "minimax_violation",
    "outcome_weights",
    "parse_config",
    "payoff",
    "payoff_at",
    "payoff_grid",
    "probability_matrix",
    "sample_surface",
    "solve_zero_sum",
    "theta",
    "__version__",
]
