"""Scoring recovered memberships and post-processing them into complexes.

The headline metric is the permutation-matched entrywise error: the
minimum over column permutations of the max-abs difference between the
estimated and true membership matrices. Post-processing offers
binarisation at a threshold and greedy merging of heavily overlapping
complexes, plus a plain-text export.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInput
from .linalg import as_matrix

EXHAUSTIVE_LIMIT = 8  # brute-force permutations up to this many communities


@dataclass(frozen=True)
class EvaluationResult:
    """Best-permutation max-norm error with the permutation that attains it.

    ``permutation[j]`` is the true column matched to estimated column j.
    """

    error: float
    permutation: tuple
    per_column_errors: tuple


@dataclass
class ComplexSet:
    """Node-index sets (one per predicted community) with merge provenance."""

    complexes: list
    merged_from: list = field(default_factory=list)

    def __post_init__(self):
        if not self.merged_from:
            self.merged_from = [1] * len(self.complexes)


def _column_cost_matrix(theta_hat, theta):
    k = theta_hat.shape[1]
    C = np.empty((k, k))
    for j in range(k):
        C[j] = np.max(np.abs(theta_hat[:, j : j + 1] - theta), axis=0)
    return C


def _perfect_matching(allowed):
    """Kuhn's augmenting-path matching on a boolean k x k adjacency.

    Returns the column matched to each row, or None when no perfect
    matching exists.
    """
    k = allowed.shape[0]
    match_col = [-1] * k  # column -> row

    def try_row(row, seen):
        for col in range(k):
            if allowed[row, col] and not seen[col]:
                seen[col] = True
                if match_col[col] == -1 or try_row(match_col[col], seen):
                    match_col[col] = row
                    return True
        return False

    for row in range(k):
        if not try_row(row, [False] * k):
            return None
    perm = [-1] * k
    for col, row in enumerate(match_col):
        perm[row] = col
    return perm


def _bottleneck_permutation(C):
    """Exact min-max assignment by binary search over the cost values."""
    values = np.unique(C)
    lo, hi = 0, values.size - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        perm = _perfect_matching(C <= values[mid])
        if perm is not None:
            best = perm
            hi = mid - 1
        else:
            lo = mid + 1
    return best  # always exists: the full graph is complete


def entrywise_error(theta_hat, theta):
    """Permutation-matched entrywise (max-norm) error between two memberships.

    Exhaustive search over permutations for small k; exact bottleneck
    assignment (binary search plus bipartite matching) beyond that.
    """
    theta_hat = as_matrix(theta_hat)
    theta = as_matrix(theta)
    if theta_hat.shape != theta.shape:
        raise InvalidInput(f"shape mismatch: {theta_hat.shape} vs {theta.shape}")
    k = theta.shape[1]
    C = _column_cost_matrix(theta_hat, theta)
    if k <= EXHAUSTIVE_LIMIT:
        best_perm, best_cost = None, np.inf
        for perm in itertools.permutations(range(k)):
            cost = float(max(C[j, perm[j]] for j in range(k)))
            if cost < best_cost:
                best_perm, best_cost = perm, cost
    else:
        best_perm = tuple(_bottleneck_permutation(C))
    per_column = tuple(float(C[j, best_perm[j]]) for j in range(k))
    return EvaluationResult(max(per_column), tuple(best_perm), per_column)


def binarize(theta_hat, threshold=0.5):
    """Round memberships into complexes: node i joins complex j iff
    theta_hat[i, j] >= threshold. Empty complexes are dropped."""
    theta_hat = as_matrix(theta_hat)
    complexes = []
    for j in range(theta_hat.shape[1]):
        members = set(np.nonzero(theta_hat[:, j] >= threshold)[0].tolist())
        if members:
            complexes.append(members)
    return ComplexSet(complexes)


def overlap_score(a, b):
    """Match score |A intersect B|^2 / (|A| |B|) between two node sets."""
    if not a or not b:
        return 0.0
    inter = len(a & b)
    return inter * inter / (len(a) * len(b))


def merge_complexes(cs, overlap_threshold=0.8):
    """Repeatedly union the most-overlapping pair until all scores drop
    below the threshold.

    Ties on the score are broken by the lowest pair of indices, making
    the procedure deterministic. The complex count strictly decreases
    with every merge, so the loop terminates.
    """
    if not 0.0 < overlap_threshold <= 1.0:
        raise InvalidInput(f"overlap threshold {overlap_threshold} outside (0, 1]")
    complexes = [set(c) for c in cs.complexes]
    provenance = list(cs.merged_from)
    while True:
        best = None  # (negated score, i, j)
        for i in range(len(complexes)):
            for j in range(i + 1, len(complexes)):
                score = overlap_score(complexes[i], complexes[j])
                if score >= overlap_threshold:
                    key = (-score, i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            return ComplexSet(complexes, provenance)
        _, i, j = best
        complexes[i] = complexes[i] | complexes[j]
        provenance[i] += provenance[j]
        del complexes[j], provenance[j]


def export_complexes(cs, path, names=None):
    """Write one complex per line: tab-separated node identifiers, LF endings."""
    with open(path, "w", newline="\n") as fh:
        for members in cs.complexes:
            ordered = sorted(members)
            labels = [names[i] if names else str(i) for i in ordered]
            fh.write("\t".join(labels) + "\n")
