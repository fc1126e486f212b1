"""Dense symmetric eigensolvers and small-matrix kernels.

All routines operate on plain float64 numpy arrays. Two eigensolver paths
are provided behind :func:`top_k_eigs`: a full cyclic Jacobi sweep for
small matrices, and a block orthogonal (subspace) iteration with
Rayleigh-Ritz extraction and deflation for larger ones. "Top k" always
means the k algebraically largest eigenvalues.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, InvalidInput

DEFAULT_EIG_TOL = 1e-8
SYMMETRY_TOL = 1e-10
JACOBI_CUTOFF = 64


def as_matrix(a):
    """Coerce to a finite float64 2-D array, raising InvalidInput otherwise."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise InvalidInput(f"expected a 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInput("matrix contains NaN or Inf entries")
    return m


def _as_vector(p):
    v = np.asarray(p, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise InvalidInput("vector contains NaN or Inf entries")
    return v


@dataclass(frozen=True)
class SpectralEmbedding:
    """Top-k eigenpairs of a symmetric matrix.

    Attributes
    ----------
    vectors : (n, k) ndarray
        Orthonormal columns, one eigenvector per retained eigenvalue.
    values : (k,) ndarray
        Eigenvalues sorted non-increasing by algebraic value.
    """

    vectors: np.ndarray
    values: np.ndarray


def project_out(R, p):
    """Remove the component of every column of ``R`` along vector ``p``.

    Computes ``R - p (p^T R) / ||p||^2`` without forming the rank-one
    projector, so the cost is O(rows * cols).
    """
    R = as_matrix(R)
    p = _as_vector(p)
    if p.size != R.shape[0]:
        raise InvalidInput(
            f"projection vector has length {p.size}, expected {R.shape[0]}"
        )
    nrm2 = float(p @ p)
    if nrm2 <= 0.0:
        raise InvalidInput("cannot project out the zero vector")
    return R - np.outer(p, p @ R) / nrm2


def jacobi_eigh(A, sweep_tol=1e-14, max_sweeps=60):
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi.

    Returns (values, vectors) with values ascending and vectors' columns
    the matching orthonormal eigenvectors. Intended for small n; cost is
    O(n^3) per sweep.
    """
    A = np.array(as_matrix(A))
    n = A.shape[0]
    V = np.eye(n)
    if n == 1:
        return A.diagonal().copy(), V
    norm = np.linalg.norm(A)
    if norm == 0.0:
        return np.zeros(n), V
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(A, -1) ** 2) * 2.0)
        if off <= sweep_tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-20 * norm:
                    continue
                # symmetric Schur rotation annihilating A[p, q]
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                rows = A[[p, q], :]
                A[[p, q], :] = rot.T @ rows
                cols = A[:, [p, q]]
                A[:, [p, q]] = cols @ rot
                A[p, q] = A[q, p] = 0.0
                V[:, [p, q]] = V[:, [p, q]] @ rot
    else:
        raise ConvergenceFailure(
            f"Jacobi did not converge in {max_sweeps} sweeps", residual=off
        )
    values = A.diagonal().copy()
    order = np.argsort(values)
    return values[order], V[:, order]


def _orthonormalize(X):
    Q, _ = np.linalg.qr(X)
    return Q


def _check_symmetric(A):
    asym = np.max(np.abs(A - A.T)) if A.size else 0.0
    if asym > SYMMETRY_TOL:
        raise InvalidInput(f"matrix is not symmetric (max asymmetry {asym:.3e})")


def _residual_scale(A, tol):
    return tol * max(1.0, float(np.max(np.abs(A))) * A.shape[0])


def _subspace_topk(A, k, tol, max_iter, rng, shift=0.0):
    """Dominant eigenpairs of A + shift*I by block iteration, largest first.

    With shift = 0 "dominant" means largest magnitude; callers wanting
    algebraic order pass a shift making the matrix positive definite.
    Returned values are eigenvalues of A itself (shift removed).
    """
    n = A.shape[0]
    limit = _residual_scale(A, tol)
    extra = min(n - k, max(2, k // 2))
    q = k + extra
    Q = _orthonormalize(rng.standard_normal((n, q)))
    locked_vecs = np.empty((n, 0))
    locked_vals = []
    best_resid = np.inf
    for _ in range(max_iter):
        Y = A @ Q + shift * Q
        if locked_vecs.shape[1]:
            Y -= locked_vecs @ (locked_vecs.T @ Y)
        H = Q.T @ Y
        H = 0.5 * (H + H.T)
        theta, S = jacobi_eigh(H)
        order = np.argsort(np.abs(theta))[::-1]  # dominant first
        theta, S = theta[order], S[:, order]
        X = Q @ S
        AX = Y @ S
        resid = np.linalg.norm(AX - X * theta, axis=0)
        best_resid = min(best_resid, float(resid[0]) if resid.size else 0.0)
        # lock converged leading pairs, preserving dominance order
        while theta.size and resid[0] <= limit:
            locked_vecs = np.hstack([locked_vecs, X[:, :1]])
            locked_vals.append(float(theta[0]) - shift)
            theta, S, X, AX, resid = theta[1:], S[:, 1:], X[:, 1:], AX[:, 1:], resid[1:]
            if len(locked_vals) >= k:
                return np.array(locked_vals), locked_vecs[:, :k]
        if X.shape[1] == 0:
            break
        Z = AX  # power step from the Ritz basis
        if locked_vecs.shape[1]:
            Z = Z - locked_vecs @ (locked_vecs.T @ Z)
        Q = _orthonormalize(Z)
    raise ConvergenceFailure(
        f"subspace iteration did not converge in {max_iter} iterations",
        residual=best_resid,
    )


def top_k_eigs(A, k, tol=DEFAULT_EIG_TOL, max_iter=None, rng=None):
    """Eigenpairs for the k algebraically largest eigenvalues of symmetric A.

    Parameters
    ----------
    A : (n, n) array_like
        Symmetric (max-abs asymmetry at most 1e-10).
    k : int
        Number of eigenpairs, 1 <= k <= n.
    tol : float
        Residual target: each pair satisfies
        ``||A v - lambda v||_2 <= tol * max(1, n * max|A_ij|)``.
    max_iter : int, optional
        Iteration cap for the subspace path; defaults to 10 * n.
    rng : numpy.random.Generator, optional
        Source for the starting subspace. A fixed default keeps results
        reproducible when the caller does not care.

    Returns
    -------
    SpectralEmbedding
    """
    A = as_matrix(A)
    n = A.shape[0]
    if A.shape[0] != A.shape[1]:
        raise InvalidInput(f"expected a square matrix, got {A.shape}")
    _check_symmetric(A)
    if not 1 <= k <= n:
        raise InvalidInput(f"k={k} outside [1, {n}]")
    if max_iter is None:
        max_iter = 10 * n
    if rng is None:
        rng = np.random.default_rng(0)

    if n <= JACOBI_CUTOFF:
        values, vectors = jacobi_eigh(A)
        values, vectors = values[::-1], vectors[:, ::-1]  # descending
        emb = SpectralEmbedding(np.ascontiguousarray(vectors[:, :k]), values[:k].copy())
    else:
        values, vectors = _subspace_topk(A, k, tol, max_iter, rng)
        if np.min(values) < 0.0:
            # Dominance by magnitude may hide smaller positive eigenvalues
            # behind large negative ones. Shift to positive definite, where
            # magnitude order and algebraic order coincide, and rerun.
            sigma = max(-float(np.min(values)), float(np.min(np.abs(values))))
            sigma += 0.1 * sigma + 1e-12
            values, vectors = _subspace_topk(A, k, tol, max_iter, rng, shift=sigma)
        order = np.argsort(values)[::-1]
        emb = SpectralEmbedding(
            np.ascontiguousarray(vectors[:, order]), values[order].copy()
        )

    limit = _residual_scale(A, tol)
    resid = np.linalg.norm(A @ emb.vectors - emb.vectors * emb.values, axis=0)
    worst = float(resid.max()) if resid.size else 0.0
    if worst > limit:
        raise ConvergenceFailure(
            f"eigenpair residual {worst:.3e} exceeds {limit:.3e}", residual=worst
        )
    return emb


def singular_values(M):
    """All singular values of a small matrix, sorted non-increasing.

    Computed as square roots of the eigenvalues of M^T M (negative
    round-off clamped to zero first).
    """
    M = as_matrix(M)
    gram = M.T @ M if M.shape[0] >= M.shape[1] else M @ M.T
    values, _ = jacobi_eigh(0.5 * (gram + gram.T))
    return np.sqrt(np.clip(values, 0.0, None))[::-1]
