"""Successive projection: greedy selection of (almost) pure node columns.

Repeatedly picks the residual column of maximum Euclidean norm and
projects every column orthogonally to it. On an exact rank-k probability
matrix the selected column indices identify one near-pure node per
community.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInput
from .linalg import as_matrix, project_out


@dataclass(frozen=True)
class SpaResult:
    """Selected column indices, their residual norms, and early-stop flag."""

    indices: list = field(default_factory=list)
    residual_norms: list = field(default_factory=list)
    stopped_early: bool = False


def successive_projection(M, k, zero_tol=1e-9):
    """Select up to k column indices of M by norm-greedy projection.

    At each step the residual column of largest squared norm is recorded
    (ties broken by smallest index) and removed from every remaining
    column by orthogonal projection. Stops early once the largest
    residual squared norm falls to ``zero_tol**2`` times its initial
    value, reporting ``stopped_early`` instead of raising.
    """
    M = as_matrix(M)
    n_cols = M.shape[1]
    if not 1 <= k <= n_cols:
        raise InvalidInput(f"k={k} outside [1, {n_cols}]")
    if not zero_tol >= 0:
        raise InvalidInput(f"zero_tol={zero_tol} must be nonnegative")

    R = M.copy()
    norms2 = np.einsum("ij,ij->j", R, R)
    cutoff = (zero_tol ** 2) * float(norms2.max())
    taken = np.zeros(n_cols, dtype=bool)

    indices, residual_norms = [], []
    for _ in range(k):
        live = np.where(taken, -1.0, norms2)
        j = int(np.argmax(live))
        if live[j] <= cutoff:
            return SpaResult(indices, residual_norms, stopped_early=True)
        indices.append(j)
        residual_norms.append(float(np.sqrt(norms2[j])))
        taken[j] = True
        R = project_out(R, R[:, j].copy())
        norms2 = np.einsum("ij,ij->j", R, R)
    return SpaResult(indices, residual_norms, stopped_early=False)
