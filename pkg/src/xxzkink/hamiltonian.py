"""Sector-restricted matrices of the anisotropic chain with domain-wall fields.

All variants act on one magnetization sector and are real symmetric.  With
s = sqrt(1 - delta_inv^2) and bond energies

    E(c) = sum_a (J + m_a)(J - m_{a+1})      (nonnegative integers)
    F(c) = sum_a (J^2 - m_a m_{a+1})         (exact half-integers)

the supported variants are

    kink        diag E(c) + (1 - s) J (m_L - m_{-L})   hopping x delta_inv
    antikink    diag F(c) + s J (m_L - m_{-L})         hopping x delta_inv
    ising_kink  diag E(c)                              no hopping
    ising_free  diag F(c)                              no hopping
    h1          no diagonal                            hopping x 1
    h2          diag J (m_L - m_{-L})                  no hopping

Hopping couples configurations that exchange one unit across a bond; the
entry is -(1/2) sqrt(product of the two ladder radicands), with the radicand
product formed in exact integers and square-rooted once.  The decomposition
kink = ising_kink + delta_inv * h1 + (1 - s) * h2 holds entrywise, as does
ising_free = ising_kink + h2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .basis import IsingConfig, SectorBasis
from .halfint import as_half

VARIANTS = ("kink", "antikink", "ising_kink", "ising_free", "h1", "h2")

_DENSE_FALLBACK_DIM = 64


def ising_bond_energy(J, m, mp) -> int:
    """(J + m)(J - m'), the energy of one oriented bond; exact integer >= 0."""
    J = as_half(J)
    m = as_half(m)
    mp = as_half(mp)
    for v in (m, mp):
        if abs(v.twice) > J.twice or (J.twice - v.twice) % 2 != 0:
            raise ValueError(f"{v} is not on the spin-{J} ladder")
    return (J + m).as_integer() * (J - mp).as_integer()


def ising_config_energy(J, config: IsingConfig) -> int:
    """Sum of the 2L bond energies of a configuration; exact integer >= 0."""
    vals = config.values
    return sum(ising_bond_energy(J, vals[i], vals[i + 1]) for i in range(len(vals) - 1))


def ising_diagonal(basis: SectorBasis) -> np.ndarray:
    """Vector of E(c) over the sector, exact int64, indexed by rank."""
    d = basis.down
    return ((basis.two_j - d[:, :-1]) * d[:, 1:]).sum(axis=1)


def free_diagonal(basis: SectorBasis) -> np.ndarray:
    """Vector of F(c) over the sector; exact multiples of 1/2 in float64."""
    d = basis.down
    return (0.5 * basis.two_j * (d[:, :-1] + d[:, 1:]) - d[:, :-1] * d[:, 1:]).sum(axis=1)


def boundary_diagonal(basis: SectorBasis) -> np.ndarray:
    """Vector of J (m_L - m_{-L}) over the sector; exact multiples of 1/2."""
    d = basis.down
    return 0.5 * basis.two_j * (d[:, 0] - d[:, -1])


@dataclass
class HoppingStructure:
    """COO triplets of the pure hopping term (the h1 variant), reusable
    across anisotropy values for one sector."""

    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray


def hopping_structure(basis: SectorBasis) -> HoppingStructure:
    """Single-exchange couplings of a sector.

    For each bond (a, a+1) and each configuration, the two moves
    (d_a - 1, d_{a+1} + 1) and (d_a + 1, d_{a+1} - 1) are valid when the
    digits stay in 0..2J.  The neighbor's rank is the row's own rank plus a
    correction read off the prefix-count table: only the site-a digit and the
    site-(a+1) digit and remaining-sum change, so two table lookups per site
    give the rank difference in O(1) per row.
    """
    dim, n = basis.down.shape
    tj = basis.two_j
    if dim == 0:
        empty = np.zeros(0)
        return HoppingStructure(empty.astype(np.int64), empty.astype(np.int64), empty)
    down = basis.down
    suffix = np.cumsum(down[:, ::-1], axis=1)[:, ::-1]
    cum = basis.prefix_counts
    drange = np.arange(tj + 1, dtype=np.int64)
    rad_up = drange * (tj - drange + 1)       # raise m at a site holding d units
    rad_down = (tj - drange) * (drange + 1)   # lower m at a site holding d units
    ranks = np.arange(dim, dtype=np.int64)
    rows_parts, cols_parts, vals_parts = [], [], []
    for a in range(n - 1):
        da, db = down[:, a], down[:, a + 1]
        ra, rb = suffix[:, a], suffix[:, a + 1]
        # raise at a, lower at a+1
        mask = (da >= 1) & (db <= tj - 1)
        if mask.any():
            dam, dbm = da[mask], db[mask]
            ram, rbm = ra[mask], rb[mask]
            delta = (
                cum[a, ram, dam - 1]
                - cum[a, ram, dam]
                + cum[a + 1, rbm + 1, dbm + 1]
                - cum[a + 1, rbm, dbm]
            )
            rows_parts.append(ranks[mask])
            cols_parts.append(ranks[mask] + delta)
            vals_parts.append(-0.5 * np.sqrt((rad_up[dam] * rad_down[dbm]).astype(float)))
        # lower at a, raise at a+1
        mask = (da <= tj - 1) & (db >= 1)
        if mask.any():
            dam, dbm = da[mask], db[mask]
            ram, rbm = ra[mask], rb[mask]
            delta = (
                cum[a, ram, dam + 1]
                - cum[a, ram, dam]
                + cum[a + 1, rbm - 1, dbm - 1]
                - cum[a + 1, rbm, dbm]
            )
            rows_parts.append(ranks[mask])
            cols_parts.append(ranks[mask] + delta)
            vals_parts.append(-0.5 * np.sqrt((rad_down[dam] * rad_up[dbm]).astype(float)))
    if rows_parts:
        return HoppingStructure(
            np.concatenate(rows_parts), np.concatenate(cols_parts), np.concatenate(vals_parts)
        )
    empty = np.zeros(0)
    return HoppingStructure(empty.astype(np.int64), empty.astype(np.int64), empty)


@dataclass
class SectorOperator:
    """A variant restricted to one sector, stored as CSR (row index = rank)."""

    basis: SectorBasis
    variant: str
    delta_inv: float | None
    matrix: sparse.csr_matrix
    diagonal_only: bool

    _dense_cache: np.ndarray | None = None
    _inf_norm: float | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal()

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def to_dense(self) -> np.ndarray:
        if self.dim <= _DENSE_FALLBACK_DIM:
            if self._dense_cache is None:
                self._dense_cache = self.matrix.toarray()
            return self._dense_cache
        return self.matrix.toarray()

    def inf_norm(self) -> float:
        """Maximum absolute row sum; used to scale residual tolerances."""
        if self._inf_norm is None:
            if self.dim == 0:
                self._inf_norm = 0.0
            else:
                self._inf_norm = float(abs(self.matrix).sum(axis=1).max())
        return self._inf_norm


def build_sector_operator(
    J,
    L,
    M,
    variant: str = "kink",
    delta_inv: float | None = None,
    basis: SectorBasis | None = None,
    structure: HoppingStructure | None = None,
) -> SectorOperator:
    """Assemble one sector-restricted variant as a real symmetric CSR matrix.

    ``delta_inv`` is required (in [0, 1]) for the kink and antikink variants
    and must be omitted for the parameter-free ones.  A prebuilt ``basis``
    and hopping ``structure`` may be passed to share work across variants and
    anisotropy values.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    J = as_half(J)
    M = as_half(M)
    if variant in ("kink", "antikink"):
        if delta_inv is None:
            raise ValueError(f"variant {variant!r} requires delta_inv")
        delta_inv = float(delta_inv)
        if not 0.0 <= delta_inv <= 1.0:
            raise ValueError(f"delta_inv must lie in [0, 1], got {delta_inv}")
    elif delta_inv is not None:
        raise ValueError(f"variant {variant!r} takes no delta_inv")

    if basis is None:
        basis = SectorBasis(J, L, M)
    elif (basis.two_j, basis.L, basis.two_m) != (J.twice, int(L), M.twice):
        raise ValueError("supplied basis does not match (J, L, M)")
    if basis.dim == 0:
        raise ValueError(f"sector M={M} is empty for J={J}, L={L}")

    hop_scale = 0.0
    if variant == "h1":
        hop_scale = 1.0
    elif variant in ("kink", "antikink"):
        hop_scale = delta_inv

    if variant == "kink":
        s = math.sqrt(1.0 - delta_inv * delta_inv)
        diag = ising_diagonal(basis) + (1.0 - s) * boundary_diagonal(basis)
    elif variant == "antikink":
        s = math.sqrt(1.0 - delta_inv * delta_inv)
        diag = free_diagonal(basis) + s * boundary_diagonal(basis)
    elif variant == "ising_kink":
        diag = ising_diagonal(basis).astype(float)
    elif variant == "ising_free":
        diag = free_diagonal(basis)
    elif variant == "h2":
        diag = boundary_diagonal(basis)
    else:  # h1
        diag = None

    dim = basis.dim
    ranks = np.arange(dim, dtype=np.int64)
    if hop_scale != 0.0:
        if structure is None:
            structure = hopping_structure(basis)
        if diag is None:
            rows, cols = structure.rows, structure.cols
            data = hop_scale * structure.values
        else:
            rows = np.concatenate([ranks, structure.rows])
            cols = np.concatenate([ranks, structure.cols])
            data = np.concatenate([diag.astype(float), hop_scale * structure.values])
        diagonal_only = structure.rows.size == 0
    else:
        if diag is None:
            diag = np.zeros(dim)
        rows = cols = ranks
        data = diag.astype(float)
        diagonal_only = True

    matrix = sparse.csr_matrix((data, (rows, cols)), shape=(dim, dim))
    return SectorOperator(basis, variant, delta_inv, matrix, diagonal_only)
