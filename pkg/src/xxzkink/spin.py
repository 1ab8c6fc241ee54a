"""Single-site spin operators for arbitrary spin magnitude.

The local basis is ordered by decreasing eigenvalue of the diagonal
component: index i holds m = J - i for i = 0..2J.  Everything stays real;
transverse couplings are always expressed through the ladder pair
S+ S- + S- S+ instead of the imaginary component.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .halfint import as_half

_DIRECTIONS = ("up", "down")


def ladder_radicand(J, m, direction: str) -> int:
    """Exact integer under the square root of a ladder coefficient.

    up:   J(J+1) - m(m+1) = (J - m)(J + m + 1)
    down: J(J+1) - m(m-1) = (J + m)(J - m + 1)

    Both factors are nonnegative integers whenever m lies on the spin-J
    ladder, so the radicand is computed without any rounding.
    """
    if direction not in _DIRECTIONS:
        raise ValueError(f"direction must be one of {_DIRECTIONS}, got {direction!r}")
    J = as_half(J)
    m = as_half(m)
    if abs(m.twice) > J.twice or (J.twice - m.twice) % 2 != 0:
        raise ValueError(f"m={m} is not on the spin-{J} ladder")
    if direction == "up":
        return (J - m).as_integer() * (J + m + 1).as_integer()
    return (J + m).as_integer() * (J - m + 1).as_integer()


def ladder_coefficient(J, m, direction: str) -> float:
    """Matrix element of S+ (direction "up") or S- ("down") out of level m.

    Returns 0 at the annihilated edge (m = J going up, m = -J going down).
    """
    return math.sqrt(ladder_radicand(J, m, direction))


class SpinMatrices(NamedTuple):
    s3: np.ndarray
    splus: np.ndarray
    sminus: np.ndarray


def spin_matrices(J) -> SpinMatrices:
    """Dense real (2J+1)x(2J+1) matrices S3, S+, S- in the m-descending basis.

    S3 is diagonal with entries J, J-1, ..., -J; S+ has its nonzeros on the
    superdiagonal and S- on the subdiagonal, with exactly equal entries
    (adjoint pair).
    """
    J = as_half(J)
    t = J.twice
    if t < 1:
        raise ValueError("spin magnitude must be at least 1/2")
    dim = t + 1
    s3 = np.diag([(t - 2 * i) / 2.0 for i in range(dim)])
    splus = np.zeros((dim, dim))
    sminus = np.zeros((dim, dim))
    for i in range(1, dim):
        # i lowering steps below the top level; radicand i*(2J - i + 1)
        c = math.sqrt(i * (t - i + 1))
        splus[i - 1, i] = c
        sminus[i, i - 1] = c
    return SpinMatrices(s3, splus, sminus)
