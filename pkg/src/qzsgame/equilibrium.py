"""Saddle-point search over the two players' strategy rectangle.

Player A picks p to maximize the payoff, player B picks q to minimize it.
An interior saddle is a point where the gradient vanishes and neither
player can improve by deviating anywhere along their own axis; on the
closed rectangle an equilibrium can also sit on the boundary, where the
gradient condition does not apply.  The search is deterministic: Newton
iterations from a fixed start grid, then dense scans with fixed
resolutions, so repeated runs give identical output.
"""

from dataclasses import dataclass

import numpy as np

from .engine import evaluation_domain, payoff_at, payoff_grid
from .errors import DomainError

__all__ = [
    "ConsistencyScan",
    "EquilibriumReport",
    "PayoffSurface",
    "classify",
    "consistency_scan",
    "find_critical_points",
    "find_equilibrium",
    "gradient",
    "sample_surface",
]

GRAD_STEP = 1e-5
HESS_STEP = 1e-4
GRAD_TOL = 1e-8
DEDUP_RADIUS = 1e-4
RESPONSE_TOL_SCALE = 1e-6
SCAN_RESOLUTION = 1001
START_GRID = 15

_INTERIOR_SADDLE = "interior-saddle"
_BOUNDARY = "boundary-equilibrium"
_NONE = "none"


@dataclass(frozen=True)
class PayoffSurface:
    """Payoff samples on a rectangular grid; values[i, j] = P(p_i, q_j)."""

    p_values: np.ndarray
    q_values: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        for arr in (self.p_values, self.q_values, self.values):
            arr.setflags(write=False)

    def value_range(self):
        return float(self.values.min()), float(self.values.max())


@dataclass(frozen=True)
class EquilibriumReport:
    """Outcome of an equilibrium search or a single-point classification.

    ``status`` is one of "interior-saddle", "boundary-equilibrium" or
    "none".  ``best_response_gaps`` holds how much A could still gain by
    moving along p and how much B could still gain along q, both measured
    against dense line scans; at an equilibrium both stay within
    ``response_tol``.  ``saddles`` lists every interior saddle found and
    ``boundary_count`` the number of grid nodes on the rectangle edge that
    passed the consistency check.
    """

    status: str
    point: tuple | None
    value: float | None
    gradient_norm: float | None
    best_response_gaps: tuple | None
    response_tol: float
    candidates_examined: int
    saddles: tuple
    boundary_count: int
    domain: tuple


@dataclass(frozen=True)
class ConsistencyScan:
    """Grid mask of points that are simultaneous best responses.

    mask[i, j] is True when p_i is (within tol) a best response to q_j and
    q_j is a best response to p_i.
    """

    p_values: np.ndarray
    q_values: np.ndarray
    mask: np.ndarray
    tol: float

    def __post_init__(self):
        for arr in (self.p_values, self.q_values, self.mask):
            arr.setflags(write=False)

    @property
    def interior_count(self):
        return int(np.count_nonzero(self.mask[1:-1, 1:-1]))

    @property
    def total_count(self):
        return int(np.count_nonzero(self.mask))

    @property
    def boundary_count(self):
        return self.total_count - self.interior_count

    def points(self):
        """Consistent grid points in row-major order as (p, q) pairs."""
        idx = np.argwhere(self.mask)
        return [(float(self.p_values[i]), float(self.q_values[j])) for i, j in idx]


def _domains(game, state):
    dom_a = evaluation_domain(game.rows, state)
    dom_b = evaluation_domain(game.cols, state)
    return (dom_a.p_min, dom_a.p_max), (dom_b.p_min, dom_b.p_max)


def sample_surface(game, state, resolution=201, phase_sign=+1):
    """Evaluate the payoff on a uniform resolution x resolution grid."""
    if resolution < 2:
        raise ValueError(f"resolution must be at least 2, got {resolution}")
    (alo, ahi), (blo, bhi) = _domains(game, state)
    ps = np.linspace(alo, ahi, resolution)
    qs = np.linspace(blo, bhi, resolution)
    values = payoff_grid(game, state, ps, qs, phase_sign=phase_sign)
    return PayoffSurface(p_values=ps, q_values=qs, values=values)


def gradient(game, state, p, q, step=GRAD_STEP, phase_sign=+1):
    """Central-difference payoff gradient, one-sided next to the boundary."""
    (alo, ahi), (blo, bhi) = _domains(game, state)

    def partial(lo, hi, x, other, axis):
        left, right = max(x - step, lo), min(x + step, hi)
        if axis == 0:
            hi_v = payoff_at(game, state, right, other, phase_sign=phase_sign)
            lo_v = payoff_at(game, state, left, other, phase_sign=phase_sign)
        else:
            hi_v = payoff_at(game, state, other, right, phase_sign=phase_sign)
            lo_v = payoff_at(game, state, other, left, phase_sign=phase_sign)
        return (hi_v - lo_v) / (right - left)

    return np.array(
        [partial(alo, ahi, p, q, axis=0), partial(blo, bhi, q, p, axis=1)]
    )


def _hessian(game, state, p, q, phase_sign, step=HESS_STEP):
    """Finite-difference Hessian; the stencil center shifts inward so all
    evaluations stay inside the rectangle."""
    (alo, ahi), (blo, bhi) = _domains(game, state)
    pc = min(max(p, alo + step), ahi - step)
    qc = min(max(q, blo + step), bhi - step)

    def f(x, y):
        return payoff_at(game, state, x, y, phase_sign=phase_sign)

    f0 = f(pc, qc)
    fpp = (f(pc + step, qc) - 2.0 * f0 + f(pc - step, qc)) / step**2
    fqq = (f(pc, qc + step) - 2.0 * f0 + f(pc, qc - step)) / step**2
    fpq = (
        f(pc + step, qc + step)
        - f(pc + step, qc - step)
        - f(pc - step, qc + step)
        + f(pc - step, qc - step)
    ) / (4.0 * step**2)
    return np.array([[fpp, fpq], [fpq, fqq]])


def find_critical_points(
    game,
    state,
    starts_per_axis=START_GRID,
    grad_tol=GRAD_TOL,
    dedup_radius=DEDUP_RADIUS,
    max_iter=40,
    phase_sign=+1,
):
    """Interior zero-gradient points found by damped Newton iteration.

    Starts from the centers of a starts_per_axis x starts_per_axis tiling
    of the rectangle.  Runs that converge onto the boundary are discarded;
    survivors are deduplicated within ``dedup_radius`` and sorted, so the
    result is deterministic.
    """
    (alo, ahi), (blo, bhi) = _domains(game, state)
    edge_a = 1e-6 * (ahi - alo)
    edge_b = 1e-6 * (bhi - blo)
    offsets = (np.arange(starts_per_axis) + 0.5) / starts_per_axis
    found = []
    for fa in offsets:
        for fb in offsets:
            x = np.array([alo + fa * (ahi - alo), blo + fb * (bhi - blo)])
            g = gradient(game, state, x[0], x[1], phase_sign=phase_sign)
            gn = float(np.linalg.norm(g))
            for _ in range(max_iter):
                if gn < grad_tol:
                    break
                hess = _hessian(game, state, x[0], x[1], phase_sign)
                try:
                    step = np.linalg.solve(hess, -g)
                except np.linalg.LinAlgError:
                    step = -g
                if not np.all(np.isfinite(step)):
                    step = -g
                lam, accepted = 1.0, False
                while lam > 1e-10:
                    cand = np.clip(x + lam * step, (alo, blo), (ahi, bhi))
                    gc = gradient(game, state, cand[0], cand[1], phase_sign=phase_sign)
                    gcn = float(np.linalg.norm(gc))
                    if gcn < gn:
                        x, g, gn, accepted = cand, gc, gcn, True
                        break
                    lam *= 0.5
                if not accepted:
                    break
            interior = (
                alo + edge_a < x[0] < ahi - edge_a
                and blo + edge_b < x[1] < bhi - edge_b
            )
            if gn < grad_tol and interior:
                found.append((float(x[0]), float(x[1])))
    found.sort()
    kept = []
    for pt in found:
        if all(np.hypot(pt[0] - k[0], pt[1] - k[1]) > dedup_radius for k in kept):
            kept.append(pt)
    return kept


def _line_scan_gaps(game, state, point, resolution, phase_sign):
    """(gap_p, gap_q, value): improvement available to each player along
    dense scans of their own axis through ``point``."""
    (alo, ahi), (blo, bhi) = _domains(game, state)
    p0, q0 = point
    value = payoff_at(game, state, p0, q0, phase_sign=phase_sign)
    ps = np.linspace(alo, ahi, resolution)
    qs = np.linspace(blo, bhi, resolution)
    best_a = float(payoff_grid(game, state, ps, np.array([q0]), phase_sign=phase_sign).max())
    worst_b = float(payoff_grid(game, state, np.array([p0]), qs, phase_sign=phase_sign).min())
    return best_a - value, value - worst_b, value


def _response_tol(game, state, tol_scale, phase_sign):
    lo, hi = sample_surface(game, state, resolution=101, phase_sign=phase_sign).value_range()
    return tol_scale * max(hi - lo, 1e-9)


def classify(
    game,
    state,
    point,
    scan_resolution=SCAN_RESOLUTION,
    grad_tol=GRAD_TOL,
    response_tol=None,
    tol_scale=RESPONSE_TOL_SCALE,
    phase_sign=+1,
):
    """Decide whether ``point`` is an equilibrium of the restricted game.

    The point must lie in the strategy rectangle.  Its payoff is compared
    against dense line scans along both axes; both deviation gaps must stay
    within ``response_tol`` (default: tol_scale times the surface range).
    Interior points must additionally have a near-zero gradient to count as
    a saddle; boundary points that pass the gap test are reported as
    boundary equilibria.
    """
    (alo, ahi), (blo, bhi) = _domains(game, state)
    p0, q0 = point
    if not (alo <= p0 <= ahi and blo <= q0 <= bhi):
        raise DomainError(
            f"point {point} outside strategy rectangle "
            f"[{alo}, {ahi}] x [{blo}, {bhi}]"
        )
    if response_tol is None:
        response_tol = _response_tol(game, state, tol_scale, phase_sign)
    gap_p, gap_q, value = _line_scan_gaps(
        game, state, (p0, q0), scan_resolution, phase_sign
    )
    gn = float(np.linalg.norm(gradient(game, state, p0, q0, phase_sign=phase_sign)))
    interior = alo < p0 < ahi and blo < q0 < bhi
    consistent = gap_p <= response_tol and gap_q <= response_tol
    if consistent and interior and gn < grad_tol:
        status = _INTERIOR_SADDLE
    elif consistent and not interior:
        status = _BOUNDARY
    else:
        status = _NONE
    return EquilibriumReport(
        status=status,
        point=(float(p0), float(q0)),
        value=value,
        gradient_norm=gn,
        best_response_gaps=(gap_p, gap_q),
        response_tol=response_tol,
        candidates_examined=1,
        saddles=((float(p0), float(q0)),) if status == _INTERIOR_SADDLE else (),
        boundary_count=0,
        domain=((alo, ahi), (blo, bhi)),
    )


def consistency_scan(
    game,
    state,
    resolution=SCAN_RESOLUTION,
    tol_scale=RESPONSE_TOL_SCALE,
    phase_sign=+1,
):
    """Mark every grid node that is a mutual best response on the grid.

    Column player A maximizes over each column, row player B minimizes over
    each row; a node passes when its value is within tol of both extremes.
    The tolerance is tol_scale times the sampled surface range.
    """
    surface = sample_surface(game, state, resolution=resolution, phase_sign=phase_sign)
    v = surface.values
    lo, hi = surface.value_range()
    tol = tol_scale * max(hi - lo, 1e-9)
    col_best = v.max(axis=0)
    row_best = v.min(axis=1)
    mask = (v >= col_best[None, :] - tol) & (v <= row_best[:, None] + tol)
    return ConsistencyScan(
        p_values=surface.p_values, q_values=surface.q_values, mask=mask, tol=tol
    )


def find_equilibrium(
    game,
    state,
    starts_per_axis=START_GRID,
    scan_resolution=SCAN_RESOLUTION,
    grad_tol=GRAD_TOL,
    tol_scale=RESPONSE_TOL_SCALE,
    phase_sign=+1,
):
    """Full deterministic equilibrium search.

    First hunts interior saddles with multi-start Newton iteration and dense
    line-scan classification.  If none survives, sweeps the whole rectangle
    with a consistency scan to catch boundary equilibria.  Non-existence is
    only ever declared by that exhaustive scan, never by Newton failures.
    """
    (alo, ahi), (blo, bhi) = _domains(game, state)
    response_tol = _response_tol(game, state, tol_scale, phase_sign)
    candidates = find_critical_points(
        game,
        state,
        starts_per_axis=starts_per_axis,
        grad_tol=grad_tol,
        phase_sign=phase_sign,
    )
    reports = [
        classify(
            game,
            state,
            pt,
            scan_resolution=scan_resolution,
            grad_tol=grad_tol,
            response_tol=response_tol,
            phase_sign=phase_sign,
        )
        for pt in candidates
    ]
    saddles = [r for r in reports if r.status == _INTERIOR_SADDLE]
    if saddles:
        first = saddles[0]
        return EquilibriumReport(
            status=_INTERIOR_SADDLE,
            point=first.point,
            value=first.value,
            gradient_norm=first.gradient_norm,
            best_response_gaps=first.best_response_gaps,
            response_tol=response_tol,
            candidates_examined=len(candidates),
            saddles=tuple(r.point for r in saddles),
            boundary_count=0,
            domain=((alo, ahi), (blo, bhi)),
        )
    scan = consistency_scan(
        game, state, resolution=scan_resolution, tol_scale=tol_scale, phase_sign=phase_sign
    )
    if scan.total_count > 0:
        rep_point = scan.points()[0]
        rep = classify(
            game,
            state,
            rep_point,
            scan_resolution=scan_resolution,
            grad_tol=grad_tol,
            response_tol=max(response_tol, scan.tol),
            phase_sign=phase_sign,
        )
        status = rep.status if rep.status != _NONE else _BOUNDARY
        return EquilibriumReport(
            status=status,
            point=rep.point,
            value=rep.value,
            gradient_norm=rep.gradient_norm,
            best_response_gaps=rep.best_response_gaps,
            response_tol=max(response_tol, scan.tol),
            candidates_examined=len(candidates) + scan.total_count,
            saddles=(),
            boundary_count=scan.boundary_count,
            domain=((alo, ahi), (blo, bhi)),
        )
    # Diagnostics from the closest miss among the Newton candidates, if any.
    best = min(
        reports, key=lambda r: max(r.best_response_gaps), default=None
    )
    return EquilibriumReport(
        status=_NONE,
        point=None,
        value=None,
        gradient_norm=best.gradient_norm if best else None,
        best_response_gaps=best.best_response_gaps if best else None,
        response_tol=response_tol,
        candidates_examined=len(candidates),
        saddles=(),
        boundary_count=0,
        domain=((alo, ahi), (blo, bhi)),
    )
