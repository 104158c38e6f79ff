"""Independent closed-form oracles used by the test suite.

Everything here is written straight from pencil-and-paper algebra on the
restricted strategy families, without importing the package under test, so
the engine and these expressions can only agree if both are right.

The two ``candidate_*`` functions are long closed forms whose transcription
is unverified; the suite checks them informationally against the engine and
reports a suspected transcription error instead of failing the build when
they disagree (the binding invariants are asserted separately).
"""

import numpy as np

# Payoff tables for the worked scenarios (rows: player A, columns: player B).
GAME_2X3 = np.array([[2.0, 3.0, -2.0], [-2.0, 4.0, 2.0]])
GAME_3X3 = np.array([[2.0, 0.0, 2.0], [0.0, 3.0, 1.0], [1.0, 2.0, 1.0]])

# Known equilibria of the product-state scenarios.
SADDLE_2X3 = (10.0 / 13.0, 5.0 / 13.0)
SADDLE_2X3_VALUE = 14.0 / 13.0
SADDLE_3X3 = (5.0 / 9.0, 1.0 / 3.0)
SADDLE_3X3_VALUE = 4.0 / 3.0

# Classical mixed-strategy solutions of the two payoff tables.
CLASSICAL_2X3_VALUE = 0.0
CLASSICAL_2X3_ROW = (0.5, 0.5)
CLASSICAL_2X3_COL = (0.5, 0.0, 0.5)
CLASSICAL_3X3_VALUE = 4.0 / 3.0
CLASSICAL_3X3_ROW = (1.0 / 3.0, 0.0, 2.0 / 3.0)
CLASSICAL_3X3_COL = (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)


def _theta3(p):
    """Unitarity phase for the three-dimensional family, p in [1/9, 1]."""
    arg = 0.5 * np.sqrt((1.0 - p) / (2.0 * p))
    return np.arccos(np.minimum(arg, 1.0))


def two_by_three_probabilities(a0, a1, p, q):
    """Joint outcome distribution for the 2x3 game with state a0|00> + a1|11>.

    Valid for q in the three-dimensional feasible interval [1/9, 1] whenever
    a0 * a1 != 0; for product states any q in [0, 1] works because the
    interference term carries the factor a0 * a1.
    """
    if a0 * a1 != 0.0:
        cross = np.sqrt(2.0) * np.sin(_theta3(q)) * a0 * a1 * np.sqrt(
            p * q * (1.0 - p) * (1.0 - q)
        )
    else:
        cross = 0.0
    x11 = a0**2 * p * q + 0.5 * a1**2 * (1 - p) * (1 - q) + cross
    x12 = 0.5 * a0**2 * p * (1 - q) + a1**2 * q * (1 - p) - cross
    x13 = 0.5 * a0**2 * p * (1 - q) + 0.5 * a1**2 * (1 - p) * (1 - q)
    x21 = a0**2 * q * (1 - p) + 0.5 * a1**2 * p * (1 - q) - cross
    x22 = 0.5 * a0**2 * (1 - p) * (1 - q) + a1**2 * p * q + cross
    x23 = 0.5 * a0**2 * (1 - p) * (1 - q) + 0.5 * a1**2 * p * (1 - q)
    return np.array([[x11, x12, x13], [x21, x22, x23]])


def two_by_three_payoff(a0, a1, p, q):
    """Player A's payoff for the 2x3 game, any state a0|00> + a1|11>."""
    if a0 * a1 != 0.0:
        cross = (
            5.0
            * np.sqrt(2.0)
            * np.sin(_theta3(q))
            * a0
            * a1
            * np.sqrt(p * q * (1.0 - p) * (1.0 - q))
        )
    else:
        cross = 0.0
    return (
        (6.5 * a0**2 + a1**2) * p * q
        + cross
        - 2.5 * a0**2 * p
        + (3.0 * a1**2 - 5.0 * a0**2) * q
        + 3.0 * a0**2
    )


def product_two_by_three_payoff(p, q):
    """2x3 payoff with the unentangled state |00>: bilinear in (p, q)."""
    return 6.5 * p * q - 2.5 * p - 5.0 * q + 3.0


def swapped_product_two_by_three_payoff(p, q):
    """2x3 payoff with the unentangled state |11>: also bilinear."""
    return 3.0 * q + p * q


def product_three_by_three_payoff(p, q):
    """3x3 payoff with the unentangled state |00>: bilinear in (p, q)."""
    return 2.25 * p * q - 0.75 * p - 1.25 * q + 1.75


def uniform_three_by_three_payoff(p, q):
    """3x3 payoff with the uniformly entangled state, p and q in [1/9, 1].

    Derived by hand from the outcome amplitudes; for the uniform state the
    joint distribution collapses to a two-term interference expression and

        P = 1 + pq + (1-p)(1-q) + 2 cos(t1 + t2) sqrt(pq(1-p)(1-q)).
    """
    t1, t2 = _theta3(p), _theta3(q)
    root = np.sqrt(p * q * (1.0 - p) * (1.0 - q))
    return 1.0 + p * q + (1.0 - p) * (1.0 - q) + 2.0 * np.cos(t1 + t2) * root


def candidate_general_three_by_three_payoff(a0, a1, a2, p, q):
    """Long-form 3x3 payoff for a general state; transcription unverified."""
    t1, t2 = _theta3(p), _theta3(q)
    root = np.sqrt(p * q * (1.0 - p) * (1.0 - q))
    return (
        1.25
        + (3 * a0 * a2 + 2 * a1 * a2 + 3 * a1 * a0) * np.cos(t1 + t2) * root
        + (2 * a0 * a2 + 3 * a1 * a2 + 3 * a1 * a0) * np.cos(t1 - t2) * root
        - (2 * a1 * a0 + a0 * a2 + 2 * a1 * a2)
        * (1 - p)
        * np.cos(t2)
        * np.sqrt(q * (1 - q))
        - (a1 * a2 + 2 * a0 * a2 + 3 * a1 * a0)
        * (1 - q)
        * np.cos(t1)
        * np.sqrt(p * (1 - p))
        + 0.25 * a1**2
        + 0.5 * a0**2
        + (a1 * a2 + 0.5 * a1 * a0 + 1.5 * a0 * a2) * (1 - p * q)
        + (3 * a1**2 + 2.25 * a0**2 - 0.75 * a2**2) * p * q
        + (0.25 * a2**2 - 1.5 * a0 * a2 - a1 * a2 - a1**2 - 0.75 * a0**2) * (p + q)
        + 0.5 * (a1**2 - a0**2) * q
    )


def candidate_uniform_three_by_three_payoff(p, q):
    """Long-form 3x3 payoff for the uniform state; transcription unverified."""
    t1, t2 = _theta3(p), _theta3(q)
    root = np.sqrt(p * q * (1.0 - p) * (1.0 - q))
    return (
        0.5 * p * q
        - 4.0 / 3.0 * p
        - 4.0 / 3.0 * q
        + 2.5
        + 16.0 / 3.0 * np.cos(t1) * np.cos(t2) * root
        - 5.0 / 3.0 * (1 - p) * np.cos(t2) * np.sqrt(q * (1 - q))
        - 2.0 * (1 - q) * np.cos(t1) * np.sqrt(p * (1 - p))
    )
