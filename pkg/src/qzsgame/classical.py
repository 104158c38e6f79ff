"""Classical mixed-strategy solutions of zero-sum matrix games.

Two independent routes to the game value:

* ``solve_zero_sum``: exact minimax solution via a self-contained dense
  primal simplex with Bland's rule.  The matrix is first shifted so every
  entry is at least 1 (the value shifts by the same constant, optimal
  strategies do not), which makes the standard linear program

      maximize sum(w)  subject to  A_shifted @ w <= 1,  w >= 0

  start from a feasible slack basis; the game value is 1 / sum(w) minus
  the shift and the two strategies fall out of the primal solution and
  the duals.

* ``fictitious_play``: both players repeatedly best-respond to the
  opponent's empirical mixture.  Converges for zero-sum games, so it
  serves as a slow independent cross-check on the simplex.

Both accept a plain 2-D array or anything with an ``entries`` attribute,
and both are deterministic: Bland's rule picks the lowest eligible index,
fictitious play breaks ties toward the first index.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatchError

__all__ = ["ClassicalSolution", "fictitious_play", "minimax_violation", "solve_zero_sum"]

PIVOT_TOL = 1e-9


@dataclass(frozen=True)
class ClassicalSolution:
    """Game value for the row player plus one optimal mixture per player.

    Optimal strategies need not be unique; the value is the contract and
    the strategies are merely witnesses satisfying the minimax
    inequalities.  ``value_bounds`` brackets the value for iterative
    methods and is None for exact ones.
    """

    row_strategy: tuple
    col_strategy: tuple
    value: float
    method: str
    value_bounds: tuple | None = None
    iterations: int | None = None


def _as_matrix(matrix):
    arr = np.asarray(getattr(matrix, "entries", matrix), dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise ShapeMismatchError(f"need a nonempty 2-D payoff matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ShapeMismatchError("payoff matrix contains non-finite entries")
    return arr


def _simplex_max(a, tol=PIVOT_TOL):
    """Maximize sum(w) subject to a @ w <= 1, w >= 0, by primal simplex.

    Returns (w, duals, objective).  ``a`` must make the feasible set
    bounded (guaranteed here by strictly positive entries); if an
    unbounded ray is detected anyway the input was not shifted properly
    and an ArithmeticError is raised.
    """
    n, m = a.shape
    tab = np.zeros((n + 1, m + n + 1))
    tab[:n, :m] = a
    tab[:n, m : m + n] = np.eye(n)
    tab[:n, -1] = 1.0
    tab[n, :m] = -1.0
    basis = list(range(m, m + n))
    while True:
        enter = -1
        for j in range(m + n):
            if tab[n, j] < -tol:
                enter = j
                break
        if enter < 0:
            break
        leave, best = -1, np.inf
        for i in range(n):
            coef = tab[i, enter]
            if coef > tol:
                ratio = tab[i, -1] / coef
                if ratio < best - 1e-12 or (
                    abs(ratio - best) <= 1e-12
                    and (leave < 0 or basis[i] < basis[leave])
                ):
                    best, leave = ratio, i
        if leave < 0:
            raise ArithmeticError(
                "linear program is unbounded; payoff matrix was not shifted positive"
            )
        pivot = tab[leave, enter]
        tab[leave] /= pivot
        for r in range(n + 1):
            if r != leave and tab[r, enter] != 0.0:
                tab[r] -= tab[r, enter] * tab[leave]
        basis[leave] = enter
    w = np.zeros(m)
    for row, var in enumerate(basis):
        if var < m:
            w[var] = tab[row, -1]
    duals = tab[n, m : m + n].copy()
    return w, duals, float(tab[n, -1])


def solve_zero_sum(matrix):
    """Exact minimax value and optimal mixed strategies of a zero-sum game.

    Deterministic; repeated calls give bit-identical output, and adding a
    constant to the matrix shifts the value by that constant while leaving
    the returned strategies untouched.
    """
    a = _as_matrix(matrix)
    shift = 1.0 - float(a.min())
    w, duals, total = _simplex_max(a + shift)
    value_shifted = 1.0 / total
    col = w / total
    row = duals / float(duals.sum())
    return ClassicalSolution(
        row_strategy=tuple(float(v) for v in row),
        col_strategy=tuple(float(v) for v in col),
        value=value_shifted - shift,
        method="simplex",
    )


def fictitious_play(matrix, iterations=1_000_000):
    """Empirical-frequency solution after simultaneous best-response play.

    Each round both players best-respond to the opponent's play so far
    (first index wins ties).  Returns the midpoint of the standard value
    bracket together with the bracket itself; the bracket always contains
    the true game value.
    """
    a = _as_matrix(matrix)
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    n, m = a.shape
    rows = a.tolist()
    cols = a.T.tolist()
    row_cum = [0.0] * n
    col_cum = [0.0] * m
    row_counts = [0] * n
    col_counts = [0] * m
    for _ in range(iterations):
        i = row_cum.index(max(row_cum))
        j = col_cum.index(min(col_cum))
        row_counts[i] += 1
        col_counts[j] += 1
        picked_col = cols[j]
        for k in range(n):
            row_cum[k] += picked_col[k]
        picked_row = rows[i]
        for k in range(m):
            col_cum[k] += picked_row[k]
    lower = min(col_cum) / iterations
    upper = max(row_cum) / iterations
    return ClassicalSolution(
        row_strategy=tuple(c / iterations for c in row_counts),
        col_strategy=tuple(c / iterations for c in col_counts),
        value=0.5 * (lower + upper),
        method="fictitious-play",
        value_bounds=(lower, upper),
        iterations=iterations,
    )


def minimax_violation(matrix, solution):
    """Worst violation of the minimax inequalities by a claimed solution.

    Zero (up to rounding) certifies the solution: the row mixture secures
    at least the value against every column, and the column mixture
    concedes at most the value against every row.
    """
    a = _as_matrix(matrix)
    x = np.asarray(solution.row_strategy)
    y = np.asarray(solution.col_strategy)
    v = solution.value
    row_gap = float(np.max(v - x @ a))  # how far below v some column drags A
    col_gap = float(np.max(a @ y - v))  # how far above v some row lets B slip
    return max(row_gap, col_gap, 0.0)
