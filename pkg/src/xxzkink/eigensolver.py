"""Symmetric eigensolvers with residual certification and multiplicity grouping.

Two routes: a dense direct solve for sectors up to a configurable cap, and a
seeded Lanczos with full reorthogonalization for larger ones.  Plain Lanczos
converges one Ritz vector per distinct eigenvalue, so after a sweep converges
the solver restarts in the orthogonal complement of everything found and
keeps going until the smallest value found in the complement can no longer
enter the requested window; this recovers degenerate clusters with their
multiplicities.  Every returned eigenpair carries an explicitly computed
residual |H v - lambda v|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh, eigh_tridiagonal

from .hamiltonian import SectorOperator


@dataclass
class SpectrumRecord:
    two_j: int
    L: int
    two_m: int
    variant: str
    delta_inv: float | None
    eigenvalues: np.ndarray
    residuals: np.ndarray
    solver: str
    clusters: list
    eigenvectors: np.ndarray | None = None


def group_multiplicities(values, cluster_tol: float = 1e-8) -> list:
    """Greedy clustering of sorted values into (representative, multiplicity).

    A gap joins the running cluster when it is at most
    cluster_tol * (1 + |value|); representatives are cluster means.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return []
    if np.any(np.diff(values) < 0):
        raise ValueError("values must be sorted ascending")
    clusters = []
    start = 0
    for i in range(1, values.size + 1):
        if i == values.size or values[i] - values[i - 1] > cluster_tol * (1.0 + abs(values[i])):
            chunk = values[start:i]
            clusters.append((float(chunk.mean()), int(chunk.size)))
            start = i
    return clusters


def _record(op: SectorOperator, vals, residuals, solver, cluster_tol, vecs=None):
    b = op.basis
    vals = np.asarray(vals, dtype=float)
    return SpectrumRecord(
        two_j=b.two_j,
        L=b.L,
        two_m=b.two_m,
        variant=op.variant,
        delta_inv=op.delta_inv,
        eigenvalues=vals,
        residuals=np.asarray(residuals, dtype=float),
        solver=solver,
        clusters=group_multiplicities(vals, cluster_tol),
        eigenvectors=vecs,
    )


class DenseCapError(ValueError):
    """Sector too large for the dense route."""


def dense_spectrum(op: SectorOperator, dense_cap: int = 4000, keep_vectors: bool = False,
                   cluster_tol: float = 1e-8) -> SpectrumRecord:
    """Full spectrum by a direct symmetric solve (or an exact diagonal sort)."""
    n = op.dim
    if n == 0:
        raise ValueError("empty sector")
    if n > dense_cap:
        raise DenseCapError(f"dimension {n} exceeds dense cap {dense_cap}")
    if op.diagonal_only:
        diag = op.diagonal()
        order = np.argsort(diag, kind="stable")
        vals = diag[order].astype(float)
        residuals = np.zeros(n)
        vecs = np.eye(n)[:, order] if keep_vectors else None
        return _record(op, vals, residuals, "dense", cluster_tol, vecs)
    H = op.to_dense()
    vals, V = eigh(H)
    residuals = np.empty(n)
    for start in range(0, n, 512):
        stop = min(start + 512, n)
        block = H @ V[:, start:stop] - V[:, start:stop] * vals[start:stop]
        residuals[start:stop] = np.linalg.norm(block, axis=0)
    return _record(op, vals, residuals, "dense", cluster_tol, V if keep_vectors else None)


class LanczosError(RuntimeError):
    """Lanczos did not converge; carries the best Ritz values found so far."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


def _project_out(w: np.ndarray, vectors: list) -> None:
    if vectors:
        stack = np.asarray(vectors)
        w -= stack.T @ (stack @ w)


def _lanczos_sweep(op, want: int, tol_abs: float, m_cap: int, rng, deflate: list, scale: float):
    """One Krylov sweep in the orthogonal complement of ``deflate``.

    Returns (values, vectors, residuals) for up to ``want`` lowest Ritz pairs
    whose explicit residuals pass tol_abs, an empty triple when the complement
    carries no weight, or None when m_cap iterations were not enough.
    """
    n = op.dim
    breakdown = 100 * np.finfo(float).eps * scale
    q = rng.standard_normal(n)
    _project_out(q, deflate)
    _project_out(q, deflate)
    norm_q = np.linalg.norm(q)
    if norm_q < 1e-8 * np.sqrt(n):
        return np.array([]), [], []
    q = q / norm_q

    cap0 = min(m_cap, 64)
    Q = np.empty((cap0, n))
    alphas: list = []
    betas: list = []
    q_prev = None
    check_stride = 10

    for j in range(m_cap):
        if j >= Q.shape[0]:
            Q = np.vstack([Q, np.empty((min(2 * Q.shape[0], m_cap) - Q.shape[0], n))])
        Q[j] = q
        w = op.matvec(q)
        a = float(q @ w)
        alphas.append(a)
        w = w - a * q
        if q_prev is not None:
            w -= betas[-1] * q_prev
        # two-pass full reorthogonalization against the sweep basis and the
        # deflated eigenvectors keeps multiplicity bookkeeping trustworthy
        for _ in range(2):
            coef = Q[: j + 1] @ w
            w -= Q[: j + 1].T @ coef
            _project_out(w, deflate)
        b = float(np.linalg.norm(w))
        exhausted = b <= breakdown
        last = j == m_cap - 1
        # at breakdown the Krylov space is invariant and its Ritz pairs are
        # exact, so always harvest them, however few iterations have run
        due = (j + 1) % check_stride == 0 and j + 1 >= want
        if exhausted or last or due:
            take = min(want, j + 1)
            theta, Y = eigh_tridiagonal(
                np.asarray(alphas), np.asarray(betas), select="i", select_range=(0, take - 1)
            )
            res_est = b * np.abs(Y[j, :take])
            if exhausted or np.all(res_est <= 0.5 * tol_abs):
                X = Q[: j + 1].T @ Y[:, :take]
                for col in range(take):
                    _project_out(X[:, col], deflate)
                    X[:, col] /= np.linalg.norm(X[:, col])
                vals, vecs, res = [], [], []
                for col in range(take):
                    x = X[:, col]
                    r = float(np.linalg.norm(op.matvec(x) - theta[col] * x))
                    if r <= tol_abs:
                        vals.append(float(theta[col]))
                        vecs.append(x)
                        res.append(r)
                if vals and (exhausted or len(vals) == take):
                    return np.asarray(vals), vecs, res
                if exhausted:
                    return np.array([]), [], []
        if exhausted:
            return np.array([]), [], []
        betas.append(b)
        q_prev = q
        q = w / b
    return None


def lanczos_lowest(op: SectorOperator, k: int, tol: float = 1e-10, max_iter: int | None = None,
                   seed: int = 0, keep_vectors: bool = False,
                   cluster_tol: float = 1e-8) -> SpectrumRecord:
    """The k lowest eigenvalues (with multiplicity) by deflated Lanczos.

    Deterministic for a fixed seed: start vectors come from one PCG64 stream.
    Residuals of all returned pairs are at most tol * (1 + max row sum).
    """
    n = op.dim
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < dim, got k={k}, dim={n}")
    scale = 1.0 + op.inf_norm()
    tol_abs = tol * scale
    if max_iter is None:
        max_iter = min(n, max(300, 20 * k))
    rng = np.random.default_rng(seed)
    pool_vals: list = []
    pool_vecs: list = []
    pool_res: list = []
    max_sweeps = 2 * k + 8

    for _ in range(max_sweeps):
        comp = n - len(pool_vals)
        if comp <= 0:
            break
        want = (k - len(pool_vals)) if len(pool_vals) < k else 1
        want = min(want, comp)
        got = _lanczos_sweep(op, want, tol_abs, min(max_iter, comp), rng, pool_vecs, scale)
        if got is None:
            raise LanczosError(
                f"no convergence within max_iter={max_iter}",
                best=np.asarray(sorted(pool_vals)),
            )
        new_vals, new_vecs, new_res = got
        if new_vals.size == 0:
            break
        pool_vals.extend(float(v) for v in new_vals)
        pool_vecs.extend(new_vecs)
        pool_res.extend(new_res)
        if len(pool_vals) >= k:
            # the sweep minimum is the smallest eigenvalue left in the
            # complement; once it can no longer displace the k-th value the
            # returned multiset is final (an equal copy changes nothing)
            kth = sorted(pool_vals)[k - 1]
            if float(new_vals.min()) >= kth - cluster_tol * (1.0 + abs(kth)):
                break
    if len(pool_vals) < k:
        raise LanczosError(
            f"found only {len(pool_vals)} of {k} eigenpairs",
            best=np.asarray(sorted(pool_vals)),
        )

    order = np.argsort(np.asarray(pool_vals), kind="stable")[:k]
    vals = np.asarray(pool_vals)[order]
    res = np.asarray(pool_res)[order]
    vecs = None
    if keep_vectors:
        vecs = np.column_stack([pool_vecs[i] for i in order])
    return _record(op, vals, res, "lanczos", cluster_tol, vecs)


def solve_lowest(op: SectorOperator, k: int, solver: str = "auto", tol: float = 1e-10,
                 dense_cap: int = 4000, max_iter: int | None = None, seed: int = 0,
                 keep_vectors: bool = False, cluster_tol: float = 1e-8) -> SpectrumRecord:
    """Dispatch to the dense or Lanczos route and return the k lowest pairs."""
    n = op.dim
    if solver not in ("auto", "dense", "lanczos"):
        raise ValueError(f"unknown solver {solver!r}")
    k = int(k)
    if k < 1:
        raise ValueError("need k >= 1")
    if solver == "auto":
        solver = "dense" if (n <= dense_cap or k >= n) else "lanczos"
    if solver == "dense":
        full = dense_spectrum(op, dense_cap=dense_cap, keep_vectors=keep_vectors,
                              cluster_tol=cluster_tol)
        k_eff = min(k, n)
        vecs = full.eigenvectors[:, :k_eff] if keep_vectors else None
        return _record(op, full.eigenvalues[:k_eff], full.residuals[:k_eff], "dense",
                       cluster_tol, vecs)
    return lanczos_lowest(op, k, tol=tol, max_iter=max_iter, seed=seed,
                          keep_vectors=keep_vectors, cluster_tol=cluster_tol)
