"""Independent brute-force references used by the tests.

Everything here works from first principles (itertools enumeration and full
tensor products of single-site matrices) and never calls the code paths it
is used to check, apart from the single-site spin matrices.
"""

import itertools

import numpy as np

from xxzkink.halfint import HalfInt
from xxzkink.spin import spin_matrices


def brute_sector_rows(two_j, L, two_m):
    """All down-unit tuples of the sector, ascending lexicographic."""
    n = 2 * L + 1
    doubled = n * two_j - two_m
    if doubled % 2 != 0 or doubled < 0 or doubled > 2 * n * two_j:
        return []
    total = doubled // 2
    return [t for t in itertools.product(range(two_j + 1), repeat=n) if sum(t) == total]


def brute_config_energy(two_j, row):
    """Kink bond-energy sum, in exact integers, from the down units."""
    return sum((two_j - row[a]) * row[a + 1] for a in range(len(row) - 1))


def kron_site_operator(two_j, n_sites, mat, pos):
    out = np.array([[1.0]])
    eye = np.eye(two_j + 1)
    for p in range(n_sites):
        out = np.kron(out, mat if p == pos else eye)
    return out


def kron_kink_hamiltonian(two_j, L, delta_inv, variant="kink"):
    """Full-space Hamiltonian assembled from single-site tensor products."""
    J = two_j / 2.0
    s = spin_matrices(HalfInt(two_j))
    n = 2 * L + 1
    full = (two_j + 1) ** n
    H = np.zeros((full, full))

    def site(mat, pos):
        return kron_site_operator(two_j, n, mat, pos)

    for a in range(n - 1):
        transverse = 0.5 * (
            site(s.splus, a) @ site(s.sminus, a + 1) + site(s.sminus, a) @ site(s.splus, a + 1)
        )
        diag = J * J * np.eye(full) - site(s.s3, a) @ site(s.s3, a + 1)
        if variant == "h1":
            H -= transverse
        elif variant == "h2":
            pass
        elif variant in ("ising_kink", "ising_free"):
            H += diag
        else:
            H += diag - delta_inv * transverse
    boundary = site(s.s3, 0) - site(s.s3, n - 1)  # S3 at -L minus S3 at +L
    if variant == "kink":
        H += J * np.sqrt(1.0 - delta_inv**2) * boundary
    elif variant == "antikink":
        H -= J * np.sqrt(1.0 - delta_inv**2) * boundary
    elif variant == "ising_kink":
        H += J * boundary
    elif variant == "h2":
        H = -J * boundary
    return H


def sector_kron_indices(basis):
    """Full-space tensor indices of a sector basis (site -L slowest)."""
    idx = np.zeros(basis.dim, dtype=np.int64)
    radix = basis.two_j + 1
    for i in range(basis.n_sites):
        idx = idx * radix + basis.down[:, i]
    return idx
