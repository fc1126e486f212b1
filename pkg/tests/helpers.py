"""Shared constructions for planted-membership tests."""

import numpy as np


def plant_near_pure_rows(theta, pure_indices, eta):
    """Overwrite the given rows with corner approximations at max-norm
    distance exactly ``eta`` (diagonal 1 - eta, off entries split evenly)."""
    k = theta.shape[1]
    for j, idx in enumerate(pure_indices):
        row = np.full(k, eta / (k - 1) if k > 1 else 0.0)
        row[j] = 1.0 - eta
        theta[idx] = row
    return theta


def planted_theta(rng, n, k, eta, pure_indices=None, interior_alpha=5.0, squash=0.5):
    """Membership matrix with one near-pure row per community.

    Planted row for community j deviates from the corner e_j by exactly
    ``eta`` in max-norm. All other rows are pulled toward the simplex
    centre (entries at least ``squash / k``) so the planted rows are
    strictly the best corner approximations.

    Returns (theta, pure_indices).
    """
    theta = rng.dirichlet(np.full(k, interior_alpha), size=n)
    lo = squash / k
    theta = lo + (1.0 - k * lo) * theta
    if pure_indices is None:
        pure_indices = [int(round((j + 0.5) * n / k)) for j in range(k)]
    plant_near_pure_rows(theta, pure_indices, eta)
    return theta, list(pure_indices)


def best_permutation_distance(rows, target_identity_size):
    """min over permutations P of ||P rows - I||_max for a small square block."""
    import itertools

    k = target_identity_size
    eye = np.eye(k)
    best = np.inf
    for perm in itertools.permutations(range(k)):
        dist = np.max(np.abs(rows[list(perm)] - eye))
        best = min(best, float(dist))
    return best
