"""Closed-form spectral data of the chain at zero transverse coupling.

Every sector has a unique zero-energy configuration: a wall of -J sites on
the left, +J sites on the right and one interstitial value m at some site x,
with M = -2Jx + m.  Transferring n units of magnetization across the wall
produces the localized excitations with energies

    E_plus(m, n)  = n^2 + (J + m) n     (units moved rightward, 1 <= n <= J - m)
    E_minus(m, n) = n^2 + (J - m) n     (units moved leftward,  1 <= n <= J + m)

and the sector's spectrum below the band edge 2J consists exactly of these
closed forms (for walls away from the chain ends).  All energies here are
exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .basis import IsingConfig, SectorBasis, sector_dimension, _sector_shape
from .halfint import HalfInt, as_half
from .hamiltonian import ising_diagonal


class EdgeSectorError(ValueError):
    """Ground wall sits on the boundary: the closed-form excitation list
    does not apply and callers should fall back to numerics."""


@dataclass(frozen=True)
class GroundDescriptor:
    """Canonical wall label (x, m) of a sector's unique zero-energy state.

    m lies in (-J, J] except in the bottom sector, where the all-down
    configuration forces (x, m) = (L, -J).  ``coincident`` marks sectors
    whose two raw labels (x, J) and (x-1, -J) denote the same configuration.
    """

    x: int
    m: HalfInt
    coincident: bool


def ground_descriptor(J, L, M) -> GroundDescriptor:
    J = as_half(J)
    M = as_half(M)
    L = int(L)
    n, total = _sector_shape(J, L, M)
    if total is None:
        raise ValueError(f"magnetization {M} unreachable for J={J}, L={L}")
    tj, tm_goal = J.twice, M.twice
    r = tm_goal % (2 * tj)
    tm = r if r <= tj else r - 2 * tj         # canonical local value in (-J, J]
    x = (tm - tm_goal) // (2 * tj)
    coincident = (tm_goal - tj) % (2 * tj) == 0
    if x == L + 1:
        # bottom sector: all sites at -J
        return GroundDescriptor(L, HalfInt(-tj), coincident)
    if not -L <= x <= L:
        raise AssertionError("wall position escaped the chain")
    return GroundDescriptor(x, HalfInt(tm), coincident)


def ground_config(J, L, M) -> IsingConfig:
    """The unique zero-energy configuration of the sector."""
    J = as_half(J)
    L = int(L)
    desc = ground_descriptor(J, L, M)
    values = []
    for alpha in range(-L, L + 1):
        if alpha < desc.x:
            values.append(-J)
        elif alpha == desc.x:
            values.append(desc.m)
        else:
            values.append(J)
    return IsingConfig(L, tuple(values))


def excitation_energy(J, m, n: int, sign: int) -> int:
    """n^2 + (J + sign*m) n, exact integer."""
    J = as_half(J)
    m = as_half(m)
    n = int(n)
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    step = (J + m) if sign > 0 else (J - m)
    return n * n + step.as_integer() * n


class ExcitationSets(NamedTuple):
    plus: list   # (n, energy) with units moved rightward
    minus: list  # (n, energy) with units moved leftward


def excitation_sets(J, m) -> ExcitationSets:
    """All (n, energy) pairs with energy strictly below the band edge 2J."""
    J = as_half(J)
    m = as_half(m)
    if abs(m.twice) > J.twice or (J.twice - m.twice) % 2 != 0:
        raise ValueError(f"m={m} is not on the spin-{J} ladder")
    band = J.twice  # 2J as an exact integer
    out = {+1: [], -1: []}
    for sign, n_max in ((+1, (J - m).as_integer()), (-1, (J + m).as_integer())):
        for n in range(1, n_max + 1):
            e = excitation_energy(J, m, n, sign)
            if e >= band:
                break  # energies increase with n
            out[sign].append((n, e))
    return ExcitationSets(out[+1], out[-1])


def excitation_config(J, L, x: int, m, n: int, sign: int) -> IsingConfig:
    """Configuration obtained from the wall (x, m) by moving n units across it."""
    J = as_half(J)
    m = as_half(m)
    L = int(L)
    n = int(n)
    if not -L + 1 <= x <= L - 1:
        raise ValueError(f"wall position x={x} must be interior to [-{L}, {L}]")
    if sign == +1:
        if not 1 <= n <= (J - m).as_integer():
            raise ValueError(f"need 1 <= n <= J - m, got n={n}")
        values = []
        for alpha in range(-L, L + 1):
            if alpha <= x - 1:
                values.append(-J)
            elif alpha == x:
                values.append(m + n)
            elif alpha == x + 1:
                values.append(J - n)
            else:
                values.append(J)
    elif sign == -1:
        if not 1 <= n <= (J + m).as_integer():
            raise ValueError(f"need 1 <= n <= J + m, got n={n}")
        values = []
        for alpha in range(-L, L + 1):
            if alpha <= x - 2:
                values.append(-J)
            elif alpha == x - 1:
                values.append(-J + n)
            elif alpha == x:
                values.append(m - n)
            else:
                values.append(J)
    else:
        raise ValueError("sign must be +1 or -1")
    return IsingConfig(L, tuple(values))


@dataclass(frozen=True)
class KinkExcitation:
    sign: int
    n: int
    energy: int
    config: IsingConfig


def localized_excitations(J, L, M) -> list:
    """All below-band excitations of a bulk sector, as explicit configurations."""
    J = as_half(J)
    L = int(L)
    desc = ground_descriptor(J, L, M)
    if not -L + 1 <= desc.x <= L - 1:
        raise EdgeSectorError(
            f"sector M={as_half(M)} has its wall at x={desc.x}; no closed-form list"
        )
    sets = excitation_sets(J, desc.m)
    out = []
    for sign, pairs in ((+1, sets.plus), (-1, sets.minus)):
        for n, e in pairs:
            out.append(KinkExcitation(sign, n, e, excitation_config(J, L, desc.x, desc.m, n, sign)))
    return out


def predicted_low_spectrum(J, L, M) -> dict:
    """Energies below 2J with multiplicities: {0: 1} plus the merged
    excitation energies, collisions across the two families counting twice.

    Raises EdgeSectorError when the sector's wall touches the boundary.
    """
    J = as_half(J)
    L = int(L)
    desc = ground_descriptor(J, L, M)
    if not -L + 1 <= desc.x <= L - 1:
        raise EdgeSectorError(
            f"sector M={as_half(M)} has its wall at x={desc.x}; no closed-form prediction"
        )
    sets = excitation_sets(J, desc.m)
    out = {0: 1}
    for _, e in sets.plus + sets.minus:
        out[e] = out.get(e, 0) + 1
    return out


class Isolation(NamedTuple):
    distance: int
    exact: bool


def isolation_distance(J, L, M, E, max_enumeration: int = 10**6) -> Isolation:
    """Distance from eigenvalue E to the nearest other distinct sector level.

    Enumerates the sector diagonal when its dimension is at most
    ``max_enumeration``; otherwise returns the certified lower bound 1 with
    ``exact=False``.  All sector levels are integers, so the distance is too.
    """
    E = int(E)
    dim = sector_dimension(J, L, M)
    if dim == 0:
        raise ValueError(f"magnetization {as_half(M)} unreachable for J={as_half(J)}, L={L}")
    if dim > max_enumeration:
        return Isolation(1, False)
    values = np.unique(ising_diagonal(SectorBasis(J, L, M)))
    if E not in values:
        raise ValueError(f"E={E} is not an eigenvalue of the sector")
    others = values[values != E]
    if others.size == 0:
        raise ValueError("sector has a single distinct level; no isolation distance")
    return Isolation(int(np.abs(others - E).min()), True)


@dataclass(frozen=True)
class DegeneratePair:
    a: int
    b: int
    m: HalfInt
    energy: int


def degenerate_pairs(J) -> list:
    """Below-band degeneracies beyond the symmetric m=0 doubling.

    Each factorization 2J = a*b with 2 <= a <= b pairs the first rightward
    excitation with the (a-1)-th leftward one at m = J - 2 + a - b, both at
    energy 2J - 1 + a - b, mirrored at -m when m is nonzero.
    """
    J = as_half(J)
    tj = J.twice
    out = []
    for a in range(2, int(tj**0.5) + 1):
        if tj % a != 0:
            continue
        b = tj // a
        if b < a:
            continue
        m = J - 2 + a - b
        energy = tj - 1 + a - b
        out.append(DegeneratePair(a, b, m, energy))
        if m.twice != 0:
            out.append(DegeneratePair(a, b, -m, energy))
    return out


def band_edge_multiplicity_lower_bound(J, L, M) -> int:
    """Constructive lower bound on the multiplicity of the level 2J.

    Counts the explicit energy-2J configurations obtained by planting one
    raised unit strictly left of the wall or one lowered unit strictly right
    of it.  Coincident sectors use the label (x, J) for the left insertions
    and the label (x-1, -J) for the right ones, which yields 2L-1 interior
    counts instead of 2L-2; labels that fall off the chain contribute nothing.
    """
    J = as_half(J)
    L = int(L)
    desc = ground_descriptor(J, L, M)
    if desc.coincident:
        if desc.m == J:
            x_left, x_right = desc.x, desc.x - 1
        else:  # bottom sector, label (L, -J); the (L+1, J) partner is off-chain
            x_left, x_right = desc.x + 1, desc.x
        left = max(0, x_left - 1 + L) if x_left <= L else 0
        right = max(0, L - x_right - 1) if x_right >= -L else 0
    else:
        # -J < m < J strictly, so both insertion families are admissible
        left = max(0, desc.x - 1 + L)
        right = max(0, L - desc.x - 1)
    return left + right
