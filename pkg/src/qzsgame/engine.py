"""Payoff evaluation for zero-sum games played with restricted unitaries.

The two players share a state with Schmidt form sum_k a_k |kk>, apply their
strategy unitaries U_A(p) and U_B(q) to their own subsystems, and the
referee measures both sides in the computational basis.  The joint outcome
distribution is

    x_ij = | sum_k a_k (U_A)_ik (U_B)_jk | ** 2

and player A's expected payoff is sum_ij x_ij * alpha_ij for a payoff
table alpha.  The game is zero-sum: B's payoff is the negative.

When the shared state is a product state (a single nonzero Schmidt
coefficient, say at index k) the interference terms cancel exactly and the
outcome distribution factorizes into classical mixtures

    x_ij = w_i(p) * w_j(q),      w(p) = p at k, (1 - p)/(dim - 1) elsewhere.

Those mixtures make sense for every p in [0, 1], not just where the unitary
family exists, so product-state games are evaluated on the full unit square.
Entangled states keep the unitary feasibility rectangle
[p_min(N), 1] x [p_min(M), 1].
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    InfeasibleParameterError,
    InvalidStateError,
    ShapeMismatchError,
)
from .strategy_space import FeasibleDomain, build_unitary, feasible_domain

__all__ = [
    "AmplitudeMatrix",
    "PayoffMatrix",
    "ProbabilityMatrix",
    "SchmidtState",
    "evaluation_domain",
    "evolve",
    "outcome_weights",
    "payoff",
    "payoff_at",
    "payoff_grid",
    "probability_matrix",
]

_NORM_TOL = 1e-9


@dataclass(frozen=True)
class PayoffMatrix:
    """Player A's payoff table; rows index A's outcomes, columns B's."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2:
            raise ShapeMismatchError(f"payoff table must be 2-D, got shape {arr.shape}")
        if arr.shape[0] < 2 or arr.shape[1] < 2:
            raise ShapeMismatchError(f"payoff table must be at least 2x2, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ShapeMismatchError("payoff table contains non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]


@dataclass(frozen=True)
class SchmidtState:
    """Schmidt coefficients a_k of the shared state sum_k a_k |kk>.

    Coefficients must be nonnegative and satisfy sum a_k**2 = 1 to within
    1e-9; anything else is rejected rather than renormalized.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidStateError("coefficients must form a nonempty 1-D vector")
        if not np.all(np.isfinite(arr)):
            raise InvalidStateError("coefficients must be finite")
        if np.any(arr < 0):
            raise InvalidStateError("coefficients must be nonnegative")
        norm = float(np.sum(arr * arr))
        if abs(norm - 1.0) > _NORM_TOL:
            raise InvalidStateError(
                f"squared coefficients sum to {norm!r}, expected 1 within {_NORM_TOL}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    def __len__(self):
        return self.coeffs.size

    @property
    def is_product(self):
        """True when exactly one coefficient is nonzero."""
        return int(np.count_nonzero(self.coeffs)) == 1

    @property
    def product_index(self):
        """Index of the single nonzero coefficient; None for entangled states."""
        if not self.is_product:
            return None
        return int(np.flatnonzero(self.coeffs)[0])


@dataclass(frozen=True)
class AmplitudeMatrix:
    """Joint outcome amplitudes C_ij after both strategies act."""

    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)


@dataclass(frozen=True)
class ProbabilityMatrix:
    """Joint outcome distribution x_ij = |C_ij|**2."""

    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)


def _check_state_shape(game, state):
    k = min(game.rows, game.cols)
    if len(state) != k:
        raise ShapeMismatchError(
            f"state has {len(state)} coefficients, expected min(N, M) = {k} "
            f"for a {game.rows}x{game.cols} game"
        )


def evolve(state, unitary_a, unitary_b):
    """Amplitudes C_ij = sum_k a_k (U_A)_ik (U_B)_jk.

    The state must carry min(N, M) coefficients where N and M are the two
    players' dimensions.
    """
    n, m = unitary_a.dim, unitary_b.dim
    if len(state) != min(n, m):
        raise ShapeMismatchError(
            f"state has {len(state)} coefficients, expected min({n}, {m}) = {min(n, m)}"
        )
    a = state.coeffs
    k = a.size
    entries = (unitary_a.matrix[:, :k] * a) @ unitary_b.matrix[:, :k].T
    return AmplitudeMatrix(entries=entries)


def probability_matrix(amplitudes):
    """Squared magnitudes of the outcome amplitudes."""
    c = amplitudes.entries
    return ProbabilityMatrix(entries=(c * c.conj()).real)


def payoff(probabilities, game):
    """Player A's expected payoff sum_ij x_ij * alpha_ij."""
    x = probabilities.entries
    if x.shape != game.entries.shape:
        raise ShapeMismatchError(
            f"distribution shape {x.shape} does not match payoff table {game.entries.shape}"
        )
    return float(np.sum(x * game.entries))


def outcome_weights(p, dim, index):
    """Distribution of a strategy's measured outcome on basis input ``index``.

    Column ``index`` of the strategy unitary has squared magnitudes p on the
    diagonal and (1 - p)/(dim - 1) elsewhere, for any p in [0, 1].  This is
    the classical mixture a product-state player effectively plays.
    """
    if not 0.0 <= p <= 1.0:
        raise InfeasibleParameterError(f"p={p} outside [0, 1]", p_min=0.0)
    if not 0 <= index < dim:
        raise ShapeMismatchError(f"index {index} out of range for dim={dim}")
    w = np.full(dim, (1.0 - p) / (dim - 1))
    w[index] = p
    return w


def evaluation_domain(dim, state):
    """Interval of strategy parameters over which the payoff is defined.

    Product states factorize into classical mixtures that exist on all of
    [0, 1]; entangled states need the unitary family itself, which exists
    on [((dim-2)/dim)**2, 1].
    """
    if state.is_product:
        return FeasibleDomain(dim=dim, p_min=0.0)
    return feasible_domain(dim)


def _check_point(game, state, p, q):
    dom_a = evaluation_domain(game.rows, state)
    dom_b = evaluation_domain(game.cols, state)
    if not dom_a.contains(p, tol=1e-12):
        raise InfeasibleParameterError(
            f"p={p} outside [{dom_a.p_min}, 1] for this game and state",
            p_min=dom_a.p_min,
        )
    if not dom_b.contains(q, tol=1e-12):
        raise InfeasibleParameterError(
            f"q={q} outside [{dom_b.p_min}, 1] for this game and state",
            p_min=dom_b.p_min,
        )
    return dom_a.clip(p), dom_b.clip(q)


def payoff_at(game, state, p, q, phase_sign=+1):
    """Player A's payoff at strategy parameters (p, q).

    Uses the unitary evolution whenever both parameters are feasible for
    the unitary family, and the factorized classical mixture otherwise
    (product states only; the two agree identically where both exist).
    """
    _check_state_shape(game, state)
    p, q = _check_point(game, state, p, q)
    unit_a = feasible_domain(game.rows)
    unit_b = feasible_domain(game.cols)
    if state.is_product and not (
        unit_a.contains(p, tol=1e-12) and unit_b.contains(q, tol=1e-12)
    ):
        k = state.product_index
        wa = outcome_weights(p, game.rows, k)
        wb = outcome_weights(q, game.cols, k)
        return float(wa @ game.entries @ wb)
    ua = build_unitary(p, game.rows, phase_sign=phase_sign)
    ub = build_unitary(q, game.cols, phase_sign=phase_sign)
    return payoff(probability_matrix(evolve(state, ua, ub)), game)


def _unitary_stack(values, dim, phase_sign):
    """Strategy unitaries for many parameters at once, shape (len, dim, dim)."""
    ps = np.asarray(values, dtype=float)
    eye = np.eye(dim)
    if dim == 2:
        mix = np.array([[0.0, 1.0], [1.0, 0.0]])
        return (
            np.sqrt(ps)[:, None, None] * eye
            + phase_sign * 1j * np.sqrt(1.0 - ps)[:, None, None] * mix
        )
    mix = np.full((dim, dim), 1.0 / np.sqrt(dim - 1))
    np.fill_diagonal(mix, 0.0)
    arg = 0.5 * (dim - 2) * np.sqrt((1.0 - ps) / ((dim - 1) * ps))
    th = np.arccos(np.minimum(arg, 1.0))
    return (
        np.sqrt(ps)[:, None, None] * eye
        - np.exp(1j * th)[:, None, None] * np.sqrt(1.0 - ps)[:, None, None] * mix
    )


def payoff_grid(game, state, p_values, q_values, phase_sign=+1):
    """Payoff surface on the grid p_values x q_values, shape (len(p), len(q)).

    Matches payoff_at at every node; vectorized so dense grids (1000+ points
    per axis) stay cheap.
    """
    _check_state_shape(game, state)
    ps = np.asarray(p_values, dtype=float)
    qs = np.asarray(q_values, dtype=float)
    dom_a = evaluation_domain(game.rows, state)
    dom_b = evaluation_domain(game.cols, state)
    for vals, dom, label in ((ps, dom_a, "p"), (qs, dom_b, "q")):
        if vals.size == 0:
            raise ShapeMismatchError(f"empty {label} grid")
        if not (np.all(vals >= dom.p_min - 1e-12) and np.all(vals <= 1.0 + 1e-12)):
            raise InfeasibleParameterError(
                f"{label} grid leaves [{dom.p_min}, 1]", p_min=dom.p_min
            )
    ps = np.clip(ps, dom_a.p_min, 1.0)
    qs = np.clip(qs, dom_b.p_min, 1.0)

    if state.is_product:
        k = state.product_index
        wa = np.full((ps.size, game.rows), (1.0 - ps[:, None]) / (game.rows - 1))
        wa[:, k] = ps
        wb = np.full((qs.size, game.cols), (1.0 - qs[:, None]) / (game.cols - 1))
        wb[:, k] = qs
        return wa @ game.entries @ wb.T

    a = state.coeffs
    k = a.size
    ua = _unitary_stack(ps, game.rows, phase_sign)[:, :, :k]
    ub = _unitary_stack(qs, game.cols, phase_sign)[:, :, :k]
    # x[s,t,i,j] = |sum_k a_k ua[s,i,k] ub[t,j,k]|**2 contracted against the
    # payoff table; build each player's rank-2 coherence tensor once and
    # contract, so the grid cost is one big matrix product.
    ga = np.einsum("sik,sil->sikl", ua, ua.conj())
    gb = np.einsum("tjk,tjl->tjkl", ub, ub.conj())
    tb = np.einsum("ij,tjkl->tikl", game.entries, gb)
    weights = np.outer(a, a)
    return np.einsum("sikl,tikl,kl->st", ga, tb, weights, optimize=True).real
