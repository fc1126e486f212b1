"""Mixed-membership blockmodel sampling.

Generates the node-community distribution matrix (rows on the unit
simplex, Dirichlet-distributed), the exact edge-probability matrix
P = Theta B Theta^T, and weighted adjacency matrices obtained by
averaging repeated 0/1 Bernoulli samples of P.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput
from .linalg import as_matrix

EXACT_P = "exact_P"
SAMPLED_AVERAGE = "sampled_average"


@dataclass(frozen=True)
class MmsbParams:
    """Model parameters: size, community count, Dirichlet concentration, B."""

    n: int
    k: int
    alpha: float
    B: np.ndarray

    def __post_init__(self):
        if self.k < 2:
            raise InvalidInput(f"k={self.k}, need at least 2 communities")
        if self.n < self.k:
            raise InvalidInput(f"n={self.n} smaller than k={self.k}")
        if not self.alpha > 0:
            raise InvalidInput(f"alpha={self.alpha} must be positive")
        B = as_matrix(self.B)
        if B.shape != (self.k, self.k):
            raise InvalidInput(f"B has shape {B.shape}, expected ({self.k}, {self.k})")
        if np.max(np.abs(B - B.T)) > 1e-12:
            raise InvalidInput("B must be symmetric")
        if B.min() < 0.0 or B.max() > 1.0:
            raise InvalidInput("B entries must lie in [0, 1]")
        object.__setattr__(self, "B", B)


@dataclass(frozen=True)
class ThetaMatrix:
    """Row-stochastic n x k membership matrix."""

    theta: np.ndarray

    def __post_init__(self):
        t = as_matrix(self.theta)
        if t.min() < 0.0 or t.max() > 1.0:
            raise InvalidInput("memberships must lie in [0, 1]")
        if np.max(np.abs(t.sum(axis=1) - 1.0)) > 1e-12:
            raise InvalidInput("membership rows must sum to 1")
        object.__setattr__(self, "theta", t)

    @property
    def n(self):
        return self.theta.shape[0]

    @property
    def k(self):
        return self.theta.shape[1]


@dataclass(frozen=True)
class WeightedGraph:
    """Symmetric weighted adjacency with entries in [0, 1].

    ``kind`` records provenance: the exact probability matrix, or an
    average of ``samples`` Bernoulli adjacency draws (which forces a unit
    diagonal).
    """

    adj: np.ndarray
    kind: str = EXACT_P
    samples: int = 0

    def __post_init__(self):
        a = as_matrix(self.adj)
        if a.shape[0] != a.shape[1]:
            raise InvalidInput(f"adjacency must be square, got {a.shape}")
        if np.max(np.abs(a - a.T)) > 1e-12:
            raise InvalidInput("adjacency must be symmetric")
        if a.min() < 0.0 or a.max() > 1.0:
            raise InvalidInput("adjacency entries must lie in [0, 1]")
        if self.kind not in (EXACT_P, SAMPLED_AVERAGE):
            raise InvalidInput(f"unknown graph kind {self.kind!r}")
        if self.kind == SAMPLED_AVERAGE:
            if self.samples < 1:
                raise InvalidInput("sampled_average graphs need samples >= 1")
            if np.max(np.abs(a.diagonal() - 1.0)) > 0.0:
                raise InvalidInput("sampled_average graphs must have unit diagonal")
        object.__setattr__(self, "adj", a)

    @property
    def n(self):
        return self.adj.shape[0]


def averaging_samples(n):
    """Number of adjacency samples used at size n (smallest integer >= sqrt(n))."""
    return int(math.ceil(math.sqrt(n)))


def sample_theta(params, rng):
    """Draw the membership matrix: n independent symmetric Dirichlet rows.

    Each row is k independent Gamma(alpha, 1) variates normalised by
    their sum. Deterministic for a fixed generator state.
    """
    g = rng.gamma(params.alpha, 1.0, size=(params.n, params.k))
    sums = g.sum(axis=1)
    while np.any(sums == 0.0):  # gamma underflow, essentially unreachable
        dead = sums == 0.0
        g[dead] = rng.gamma(params.alpha, 1.0, size=(int(dead.sum()), params.k))
        sums = g.sum(axis=1)
    return ThetaMatrix(g / sums[:, None])


def build_probability_matrix(theta, B):
    """Exact edge-probability matrix P = Theta B Theta^T as a WeightedGraph."""
    t = theta.theta
    B = as_matrix(B)
    if B.shape != (t.shape[1], t.shape[1]):
        raise InvalidInput(
            f"B has shape {B.shape}, expected ({t.shape[1]}, {t.shape[1]})"
        )
    P = t @ B @ t.T
    P = 0.5 * (P + P.T)
    np.clip(P, 0.0, 1.0, out=P)
    return WeightedGraph(P, EXACT_P, 0)


def adjacency_from_uniforms(P, U):
    """One 0/1 adjacency sample driven by an explicit uniform table.

    Entry ij (i != j) is 1 exactly when ``U[i, j] < P[i, j]``; the
    diagonal is forced to 1. Pass a symmetric ``U`` to get a symmetric
    sample; the entrywise rule makes sampling commute with relabelling
    nodes when the same permutation is applied to both P and U.
    """
    P = as_matrix(P)
    U = as_matrix(U)
    if U.shape != P.shape:
        raise InvalidInput(f"uniform table shape {U.shape} != {P.shape}")
    A = (U < P).astype(float)
    np.fill_diagonal(A, 1.0)
    return A


def sample_adjacency_average(graph, s, rng):
    """Average of s independent Bernoulli adjacency samples of an exact P.

    Each sample draws the strict upper triangle once, mirrors it, and
    sets the diagonal to 1, so off-diagonal entries of the result are
    multiples of 1/s and the diagonal is exactly 1.
    """
    if graph.kind != EXACT_P:
        raise InvalidInput("adjacency sampling expects an exact probability matrix")
    if s < 1:
        raise InvalidInput(f"need at least one sample, got s={s}")
    n = graph.n
    iu = np.triu_indices(n, 1)
    p_upper = graph.adj[iu]
    counts = np.zeros(p_upper.size, dtype=np.int64)
    for _ in range(s):
        counts += rng.random(p_upper.size) < p_upper
    A = np.zeros((n, n))
    A[iu] = counts / s
    A += A.T
    np.fill_diagonal(A, 1.0)
    return WeightedGraph(A, SAMPLED_AVERAGE, s)


def make_interaction_matrix(kind, k, delta=0.0, rng=None):
    """Community interaction matrices used by the synthetic experiments.

    ``delta_blend`` returns (1 - delta) * I + delta * ones, i.e. unit
    diagonal with off-diagonal delta. ``diag_random`` returns
    0.5 * I + 0.5 * diag(u) with u drawn uniformly from [0, 1]^k.
    """
    if k < 2:
        raise InvalidInput(f"k={k}, need at least 2 communities")
    if kind == "delta_blend":
        if not 0.0 <= delta <= 1.0:
            raise InvalidInput(f"delta={delta} outside [0, 1]")
        return (1.0 - delta) * np.eye(k) + delta * np.ones((k, k))
    if kind == "diag_random":
        if rng is None:
            raise InvalidInput("diag_random needs a random generator")
        return 0.5 * np.eye(k) + 0.5 * np.diag(rng.random(k))
    raise InvalidInput(f"unknown interaction matrix kind {kind!r}")
