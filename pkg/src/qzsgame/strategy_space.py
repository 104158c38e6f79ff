"""One-parameter families of restricted unitary strategies.

Each player acts on an N-dimensional system with a unitary drawn from a
one-parameter family

    U(p) = sqrt(p) * I - exp(i * theta(p)) * sqrt(1 - p) * M_N      (N >= 3)

where M_N = (J - I) / sqrt(N - 1) is the off-diagonal mixing operator
(J is the all-ones matrix) and the phase theta(p) is fixed by requiring
U(p) to be unitary.  That requirement is only satisfiable for

    p >= p_min(N) = ((N - 2) / N) ** 2,

so the feasible parameter interval is [p_min, 1].  For N = 2 the mixing
operator is the bit flip, any phase works, and the family used here is

    U(p) = sqrt(p) * I + i * sqrt(1 - p) * sigma_x

on the full interval [0, 1].  The sign of the imaginary part is a pure
convention for N = 2; ``phase_sign`` selects it.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleParameterError, InvalidDimensionError

__all__ = [
    "FeasibleDomain",
    "MixingMatrix",
    "RestrictedUnitary",
    "build_mixing_matrix",
    "build_unitary",
    "feasible_domain",
    "theta",
]


def _check_dim(dim):
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)):
        raise InvalidDimensionError(f"dimension must be an integer, got {dim!r}")
    if dim < 2:
        raise InvalidDimensionError(f"dimension must be at least 2, got {dim}")
    return int(dim)


@dataclass(frozen=True)
class FeasibleDomain:
    """Closed interval of parameters for which the strategy family is unitary."""

    dim: int
    p_min: float
    p_max: float = 1.0

    def contains(self, p, tol=0.0):
        """Whether ``p`` lies in [p_min - tol, p_max + tol]."""
        return self.p_min - tol <= p <= self.p_max + tol

    def clip(self, p):
        return min(max(p, self.p_min), self.p_max)


@dataclass(frozen=True)
class MixingMatrix:
    """The symmetric off-diagonal mixer (J - I) / sqrt(dim - 1)."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)


@dataclass(frozen=True)
class RestrictedUnitary:
    """A member of the one-parameter strategy family."""

    dim: int
    p: float
    theta: float
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.setflags(write=False)


def feasible_domain(dim):
    """Feasible parameter interval [((dim-2)/dim)**2, 1] for the family."""
    dim = _check_dim(dim)
    p_min = ((dim - 2) / dim) ** 2
    return FeasibleDomain(dim=dim, p_min=p_min)


def build_mixing_matrix(dim):
    """All-to-all mixer: zeros on the diagonal, 1/sqrt(dim-1) elsewhere.

    Satisfies M @ M = I + (dim - 2) / sqrt(dim - 1) * M, which is what makes
    a two-term combination of I and M closable into a unitary.
    """
    dim = _check_dim(dim)
    off = 1.0 / np.sqrt(dim - 1)
    entries = np.full((dim, dim), off)
    np.fill_diagonal(entries, 0.0)
    return MixingMatrix(dim=dim, entries=entries)


def theta(p, dim):
    """Phase that makes the two-term strategy family unitary at parameter ``p``.

    For dim == 2 any phase works and pi/2 is returned.  For dim >= 3 the
    unitarity condition pins

        theta(p) = arccos( (dim - 2) / 2 * sqrt((1 - p) / ((dim - 1) * p)) )

    which is real exactly when p >= p_min(dim); theta(p_min) = 0 and
    theta(1) = pi/2.

    Raises
    ------
    InfeasibleParameterError
        If ``p`` lies outside the feasible interval for ``dim``.
    """
    dim = _check_dim(dim)
    domain = feasible_domain(dim)
    if not domain.contains(p, tol=1e-12):
        raise InfeasibleParameterError(
            f"p={p} outside feasible interval [{domain.p_min}, 1] for dim={dim}",
            p_min=domain.p_min,
        )
    if dim == 2:
        return np.pi / 2
    p = domain.clip(p)
    if p == 1.0:
        return np.pi / 2
    arg = 0.5 * (dim - 2) * np.sqrt((1.0 - p) / ((dim - 1) * p))
    return float(np.arccos(min(arg, 1.0)))


def build_unitary(p, dim, phase_sign=+1):
    """Construct the strategy unitary U(p) for an N=dim player.

    ``phase_sign`` only matters for dim == 2, where it picks the sign of the
    imaginary bit-flip term (+1 by default; -1 continues the sign pattern of
    the dim >= 3 formula).  Both choices give unitaries that differ only by
    conjugating the off-diagonal phase.
    """
    dim = _check_dim(dim)
    if phase_sign not in (+1, -1):
        raise ValueError(f"phase_sign must be +1 or -1, got {phase_sign!r}")
    th = theta(p, dim)
    p = feasible_domain(dim).clip(p)
    mix = build_mixing_matrix(dim).entries
    if dim == 2:
        matrix = np.sqrt(p) * np.eye(2) + phase_sign * 1j * np.sqrt(1.0 - p) * mix
    else:
        matrix = np.sqrt(p) * np.eye(dim) - np.exp(1j * th) * np.sqrt(1.0 - p) * mix
    return RestrictedUnitary(dim=dim, p=float(p), theta=float(th), matrix=matrix)
