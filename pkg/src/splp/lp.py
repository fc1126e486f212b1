"""Per-community linear programs and the dense revised simplex behind them.

The recovery LP for anchor node i is

    min e^T x   s.t.   x >= 0,  x_i >= 1,  x = M y

with M an n x r matrix whose columns span the admissible x space (r = k).
Substituting x = M y leaves r free variables, so the LP is solved through
its dual, a standard-form problem with r equality constraints and n + 1
nonnegative variables; the optimal y is read off the final simplex
multipliers. Basis factorisations stay r x r and each pricing pass is
O(n), so one LP costs O(n) per pivot.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceFailure, InvalidInput
from .linalg import as_matrix, top_k_eigs
from .mmsb import WeightedGraph
from .spa import SpaResult, successive_projection

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

FEAS_TOL = 1e-9
OPT_TOL = 1e-9
PIVOT_FLOOR = 1e-11
DEGENERATE_SWITCH = 50  # consecutive degenerate pivots before Bland's rule

EXACT = "exact"
SPECTRAL = "spectral"


@dataclass(frozen=True)
class LpProblem:
    """Anchor LP data: basis matrix M (n x r) and the anchor row index."""

    basis_matrix: np.ndarray
    anchor_row: int

    def __post_init__(self):
        M = as_matrix(self.basis_matrix)
        n, r = M.shape
        if r > n:
            raise InvalidInput(f"basis matrix is {n} x {r}, expected r <= n")
        if not 0 <= self.anchor_row < n:
            raise InvalidInput(f"anchor row {self.anchor_row} outside [0, {n})")
        object.__setattr__(self, "basis_matrix", M)


@dataclass
class LpSolution:
    status: str
    y_star: np.ndarray = None
    x_star: np.ndarray = None
    objective: float = None
    iterations: int = 0


@dataclass
class RecoveryResult:
    """Estimated community characteristic vectors plus diagnostics."""

    theta_hat: np.ndarray
    spa: SpaResult
    per_column_status: list = field(default_factory=list)
    lp_solutions: list = field(default_factory=list)
    suspect_columns: list = field(default_factory=list)


class _PivotLimit(Exception):
    pass


def _simplex_eq_max(G, h, f, basis, max_pivots):
    """Core revised simplex: max f.u s.t. G u = h, u >= 0.

    Starts from the feasible basis given; returns (status, basis,
    multipliers, objective, pivots) with status "optimal" or "unbounded".
    Dantzig pricing, switching to Bland's rule after a degeneracy streak.
    """
    basis = list(basis)
    degenerate_streak = 0
    for pivot in range(max_pivots):
        Bmat = G[:, basis]
        u_basic = np.linalg.solve(Bmat, h)
        multipliers = np.linalg.solve(Bmat.T, f[basis])
        reduced = f - multipliers @ G
        reduced[basis] = 0.0
        if degenerate_streak >= DEGENERATE_SWITCH:
            improving = np.nonzero(reduced > OPT_TOL)[0]
            if improving.size == 0:
                return OPTIMAL, basis, multipliers, float(f[basis] @ u_basic), pivot
            enter = int(improving[0])
        else:
            enter = int(np.argmax(reduced))
            if reduced[enter] <= OPT_TOL:
                return OPTIMAL, basis, multipliers, float(f[basis] @ u_basic), pivot
        direction = np.linalg.solve(Bmat, G[:, enter])
        movable = direction > PIVOT_FLOOR
        if not np.any(movable):
            return UNBOUNDED, basis, multipliers, np.inf, pivot
        ratios = np.where(movable, u_basic / np.where(movable, direction, 1.0), np.inf)
        best = float(ratios.min())
        ties = np.nonzero(ratios <= best + FEAS_TOL * (1.0 + abs(best)))[0]
        # smallest variable index among ties (Bland-compatible leaving rule)
        leave = int(min(ties, key=lambda t: basis[t]))
        degenerate_streak = degenerate_streak + 1 if best <= FEAS_TOL else 0
        basis[leave] = enter
    raise _PivotLimit


def _independent_rows(G, h):
    """Pick a maximal independent subset of G's rows by greedy projection.

    Always scans every row, so ``kept`` spans the full row space. The
    returned ``consistent`` flag is False when a dependent row's
    right-hand side conflicts with the kept rows, i.e. the equality
    system G u = h has no solution at all.
    """
    p, q = G.shape
    kept = []
    ortho = np.zeros((0, q))
    consistent = True
    for i in range(p):
        row = G[i]
        resid = row - ortho.T @ (ortho @ row) if kept else row.copy()
        scale = max(1.0, float(np.linalg.norm(row)))
        if np.linalg.norm(resid) > 1e-11 * scale:
            kept.append(i)
            ortho = np.vstack([ortho, resid / np.linalg.norm(resid)])
        elif consistent:
            weights, *_ = np.linalg.lstsq(G[kept].T, row, rcond=None)
            predicted = float(weights @ h[kept])
            if abs(h[i] - predicted) > 1e-8 * max(1.0, abs(h[i])):
                consistent = False
    return kept, consistent


def _two_phase_max(G, h, f, max_pivots):
    """Two-phase simplex for max f.u s.t. G u = h, u >= 0.

    G must have independent rows. Returns (status, multipliers,
    objective, pivots) with status optimal / infeasible / unbounded.
    """
    p, q = G.shape
    signs = np.where(h < 0.0, -1.0, 1.0)
    Gs = G * signs[:, None]
    hs = h * signs

    G1 = np.hstack([Gs, np.eye(p)])
    f1 = np.concatenate([np.zeros(q), -np.ones(p)])
    status, basis, _, obj1, used = _simplex_eq_max(
        G1, hs, f1, list(range(q, q + p)), max_pivots
    )
    total = used
    if status != OPTIMAL:  # phase 1 is bounded above by zero
        raise ConvergenceFailure("phase 1 simplex terminated abnormally")
    if obj1 < -FEAS_TOL * max(1.0, float(np.abs(hs).max(initial=0.0))):
        return INFEASIBLE, None, None, total

    for slot in range(p):  # swap any lingering zero-level artificials out
        if basis[slot] < q:
            continue
        Bmat = G1[:, basis]
        z = np.linalg.solve(Bmat.T, np.eye(p)[:, slot])
        row_vals = z @ Gs
        row_vals[[j for j in basis if j < q]] = 0.0
        j = int(np.argmax(np.abs(row_vals)))
        if abs(row_vals[j]) <= PIVOT_FLOOR:
            raise ConvergenceFailure("could not eliminate artificial variable")
        basis[slot] = j

    status, basis, multipliers, obj, used = _simplex_eq_max(
        Gs, hs, f, basis, max_pivots - total
    )
    total += used
    if status == UNBOUNDED:
        return UNBOUNDED, None, None, total
    return OPTIMAL, multipliers * signs, obj, total


def simplex_core(A, b, c, max_pivots=None):
    """Solve min c.y s.t. A y >= b with y free, via the dual.

    The dual (max b.u s.t. A^T u = c, u >= 0) is solved by two-phase
    revised simplex; the optimal y is the vector of simplex multipliers,
    which certifies optimality through dual feasibility. A dual-unbounded
    outcome proves primal infeasibility. A dual-infeasible outcome is
    disambiguated by rerunning with c = 0: by Farkas that run is
    unbounded exactly when no y satisfies A y >= b.
    """
    A = as_matrix(A)
    b = np.asarray(b, dtype=float).reshape(-1)
    c = np.asarray(c, dtype=float).reshape(-1)
    m, r = A.shape
    if b.size != m or c.size != r:
        raise InvalidInput(f"inconsistent LP shapes: A {A.shape}, b {b.size}, c {c.size}")
    if m < r:
        raise InvalidInput(f"need at least as many constraints as variables ({m} < {r})")
    if not (np.all(np.isfinite(b)) and np.all(np.isfinite(c))):
        raise InvalidInput("LP data contains NaN or Inf")
    if max_pivots is None:
        max_pivots = 10 * (m + r)

    G = np.ascontiguousarray(A.T)
    kept, consistent = _independent_rows(G, c)
    pivots = 0
    if consistent:
        try:
            status, mult, obj, pivots = _two_phase_max(
                G[kept], c[kept], b.copy(), max_pivots
            )
        except (_PivotLimit, np.linalg.LinAlgError):
            raise ConvergenceFailure(f"simplex exceeded {max_pivots} pivots")
        if status == OPTIMAL:
            y = np.zeros(r)
            y[kept] = mult
            slack = A @ y - b
            worst = float(slack.min())
            if worst < -1e-6 * max(1.0, float(np.abs(b).max(initial=0.0))):
                raise ConvergenceFailure(
                    f"simplex returned an infeasible point (violation {worst:.3e})",
                    residual=worst,
                )
            return LpSolution(OPTIMAL, y_star=y, objective=float(c @ y), iterations=pivots)
        if status == UNBOUNDED:
            return LpSolution(INFEASIBLE, iterations=pivots)

    # dual infeasible: primal is unbounded when feasible, infeasible otherwise
    try:
        status0, _, _, pivots0 = _two_phase_max(
            G[kept], np.zeros(len(kept)), b.copy(), max_pivots
        )
    except (_PivotLimit, np.linalg.LinAlgError):
        raise ConvergenceFailure(f"simplex exceeded {max_pivots} pivots")
    pivots += pivots0
    if status0 == UNBOUNDED:
        return LpSolution(INFEASIBLE, iterations=pivots)
    return LpSolution(UNBOUNDED, iterations=pivots)


def solve_anchor_lp(prob, max_pivots=None):
    """Solve the anchor LP for one community and map back to x = M y."""
    M = prob.basis_matrix
    n, _ = M.shape
    i = prob.anchor_row
    A = np.vstack([M, M[i : i + 1, :]])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    c = M.sum(axis=0)
    sol = simplex_core(A, b, c, max_pivots=max_pivots)
    if sol.status != OPTIMAL:
        return sol
    x = M @ sol.y_star
    if x.min() < -1e-8 or x[i] < 1.0 - 1e-8:
        raise ConvergenceFailure(
            "anchor LP solution violates its constraints "
            f"(min x = {x.min():.3e}, x[anchor] = {x[i]:.6f})"
        )
    if abs(sol.objective - float(x.sum())) > 1e-6 * max(1.0, abs(sol.objective)):
        raise ConvergenceFailure("anchor LP objective inconsistent with e^T x")
    sol.x_star = x
    return sol


def recover_all(graph, k, mode=SPECTRAL, rng=None):
    """Full pipeline: select k anchors, solve one LP each, normalise columns.

    ``exact`` mode treats the input adjacency as the exact probability
    matrix: anchors are selected on it directly and the LP basis is the
    scaled eigenfactor V diag(lambda), which shares the column space of P
    while keeping bases nondegenerate. ``spectral`` mode uses the top-k
    eigenvectors V of the observed adjacency as basis and selects anchors
    on the denoised matrix V (V^T A), so both stages see the same rank-k
    subspace.

    A column whose LP fails keeps its status in ``per_column_status`` and
    stays zero; a column whose optimum peaks below 1 (impossible for a
    clean optimum) is flagged in ``suspect_columns`` and left unscaled.
    """
    if not isinstance(graph, WeightedGraph):
        graph = WeightedGraph(as_matrix(graph))
    if k < 2:
        raise InvalidInput(f"k={k}, need at least 2 communities")
    if mode not in (EXACT, SPECTRAL):
        raise InvalidInput(f"unknown recovery mode {mode!r}")
    A = graph.adj
    n = graph.n
    emb = top_k_eigs(A, k, rng=rng)
    if mode == EXACT:
        M = emb.vectors * emb.values
        spa_input = A
    else:
        M = emb.vectors
        spa_input = M @ (M.T @ A)

    spa_res = successive_projection(spa_input, k)
    theta_hat = np.zeros((n, k))
    statuses, solutions, suspect = [], [], []
    for col, anchor in enumerate(spa_res.indices):
        sol = solve_anchor_lp(LpProblem(M, anchor))
        solutions.append(sol)
        statuses.append(sol.status)
        if sol.status != OPTIMAL:
            continue
        peak = float(np.abs(sol.x_star).max())
        if peak < 1.0 - 1e-6:
            suspect.append(col)
            theta_hat[:, col] = sol.x_star
        else:
            theta_hat[:, col] = sol.x_star / peak
    for _ in range(len(spa_res.indices), k):  # anchors missing after early stop
        solutions.append(LpSolution(INFEASIBLE))
        statuses.append(INFEASIBLE)
    return RecoveryResult(theta_hat, spa_res, statuses, solutions, suspect)
