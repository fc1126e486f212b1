"""Closed-form recovery bounds and empirical concentration checks.

Implements the regularized incomplete beta function (the CDF of a
Dirichlet marginal, which controls how quickly near-pure nodes appear),
the sample-size bound built from it, and Monte Carlo verification of the
concentration inequalities for the membership matrix: column sums, the
spectral norm of Theta, and the smallest singular value of Theta B.
"""

import math
from dataclasses import dataclass

from .errors import ConvergenceFailure, InvalidInput
from .linalg import jacobi_eigh, singular_values
from .mmsb import sample_theta

_BETACF_MAX_ITER = 400
_LENTZ_TINY = 1e-300


def _betacf(a, b, x):
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _LENTZ_TINY:
        d = _LENTZ_TINY
    d = 1.0 / d
    frac = d
    for m in range(1, _BETACF_MAX_ITER + 1):
        m2 = 2 * m
        # even step
        coef = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + coef * d
        if abs(d) < _LENTZ_TINY:
            d = _LENTZ_TINY
        c = 1.0 + coef / c
        if abs(c) < _LENTZ_TINY:
            c = _LENTZ_TINY
        d = 1.0 / d
        frac *= d * c
        # odd step
        coef = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + coef * d
        if abs(d) < _LENTZ_TINY:
            d = _LENTZ_TINY
        c = 1.0 + coef / c
        if abs(c) < _LENTZ_TINY:
            c = _LENTZ_TINY
        d = 1.0 / d
        delta = d * c
        frac *= delta
        if abs(delta - 1.0) < 1e-16:
            return frac
    raise ConvergenceFailure(
        f"incomplete beta continued fraction stalled at a={a}, b={b}, x={x}",
        residual=abs(delta - 1.0),
    )


def reg_incomplete_beta(x, a, b):
    """Regularized incomplete beta function I_x(a, b).

    Continued-fraction evaluation with the symmetry reduction
    I_x(a, b) = 1 - I_{1-x}(b, a), accurate to about 1e-14 absolute.
    """
    if not 0.0 <= x <= 1.0:
        raise InvalidInput(f"x={x} outside [0, 1]")
    if not (a > 0.0 and b > 0.0):
        raise InvalidInput(f"shape parameters must be positive, got a={a}, b={b}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


@dataclass(frozen=True)
class RecoveryBounds:
    """Recovery-guarantee constants and the implied minimum graph size.

    ``min_n`` is None when the beta CDF is numerically 1 and no finite n
    satisfies the bound. ``epsilon_in_range`` records whether the chosen
    epsilon actually sits below min(epsilon1, epsilon2); the calculator
    still evaluates the sample-size formula outside that range.
    """

    kappa: float
    w: float
    epsilon1: float
    epsilon2: float
    epsilon: float
    p: float
    min_n: int = None
    epsilon_in_range: bool = True


def compute_bounds_from_kappa(k, alpha, kappa, p, epsilon="auto"):
    """Evaluate w, epsilon_1, epsilon_2 and the minimum n for given kappa.

    w = 8 kappa sqrt(alpha k + 1); epsilon_1 and epsilon_2 shrink as
    1/w^3 and 1/(k w^2); the minimum n is the smallest integer strictly
    greater than log(p/k) / log I_{1-epsilon}(alpha, (k-1) alpha).
    """
    if k < 2:
        raise InvalidInput(f"k={k}, need at least 2 communities")
    if not alpha > 0:
        raise InvalidInput(f"alpha={alpha} must be positive")
    if not kappa >= 1.0:
        raise InvalidInput(f"kappa={kappa} must be at least 1")
    if not 0.0 < p < 1.0:
        raise InvalidInput(f"p={p} outside (0, 1)")

    w = 8.0 * kappa * math.sqrt(alpha * k + 1.0)
    eps1 = min(1.0 / math.sqrt(k - 1.0), 0.5) / (2.0 * math.sqrt(2.0) * w * (1.0 + 80.0 * w * w))
    eps2 = 7.0 / (3520.0 * math.sqrt(2.0) * k * w * w)
    cap = min(eps1, eps2)
    if epsilon == "auto":
        eps = 0.5 * cap
    else:
        eps = float(epsilon)
        if not 0.0 < eps < 1.0:
            raise InvalidInput(f"epsilon={eps} outside (0, 1)")
    beta_cdf = reg_incomplete_beta(1.0 - eps, alpha, (k - 1.0) * alpha)
    if beta_cdf >= 1.0 - 1e-15:
        min_n = None
    else:
        ratio = math.log(p / k) / math.log(beta_cdf)
        min_n = max(1, math.floor(ratio) + 1)
    return RecoveryBounds(
        kappa=kappa,
        w=w,
        epsilon1=eps1,
        epsilon2=eps2,
        epsilon=eps,
        p=p,
        min_n=min_n,
        epsilon_in_range=eps < cap,
    )


def compute_bounds(params, p, epsilon="auto"):
    """Same as :func:`compute_bounds_from_kappa`, deriving kappa from B."""
    sigma = singular_values(params.B)
    if sigma[-1] <= 1e-12:
        raise InvalidInput("B is singular; the recovery bounds require full rank")
    kappa = float(sigma[0] / sigma[-1])
    return compute_bounds_from_kappa(params.k, params.alpha, kappa, p, epsilon)


@dataclass(frozen=True)
class ConcentrationReport:
    """Violation counts for the membership concentration bounds.

    ``bound_probabilities`` holds the closed-form failure probabilities
    (p1 for the column-sum band and ratio, p2 for the spectral norm of
    Theta, p3 for the smallest singular value of Theta B).
    """

    trials: int
    c_vector_violations: int
    c_ratio_violations: int
    theta_norm_violations: int
    sigma_k_violations: int
    bound_probabilities: dict


def concentration_probabilities(params):
    """Closed-form failure probabilities p1, p2, p3 for the bounds below."""
    n, k, alpha = params.n, params.k, params.alpha
    sigma = singular_values(params.B)
    u, l = float(sigma[0]), float(sigma[-1])
    p1 = 2.0 * k * math.exp(-n / (50.0 * k * k))
    p2 = (5.0 ** k) * math.exp(-2.0 * n / (k * k))
    if l <= 0.0:
        p3 = float("inf")
    else:
        radius = 16.0 * u * math.sqrt(alpha * k + 1.0) / l + 1.0
        decay = math.exp(-n * l ** 4 / (2.0 * k * k * u ** 4 * (alpha * k + 1.0) ** 2))
        p3 = p2 + radius ** k * decay
    return {"p1": p1, "p2": p2, "p3": p3}


def run_concentration_check(params, trials, rng):
    """Sample Theta repeatedly and count violations of the closed-form bounds.

    Per trial: every column sum c_j must lie in [0.9 n/k, 1.1 n/k];
    c_min / c_max must be at least 9/11; ||Theta|| (spectral) must not
    exceed 2 sqrt(2n/k); and sigma_k(Theta B) must be at least
    (1/4) (l / sqrt(alpha k + 1)) sqrt(2n/k) with l = sigma_min(B).
    Trials use independently derived generators so the counts do not
    depend on execution order.
    """
    if trials < 1:
        raise InvalidInput(f"trials={trials} must be positive")
    n, k = params.n, params.k
    sigma_b = singular_values(params.B)
    l = float(sigma_b[-1])

    c_lo, c_hi = 0.9 * n / k, 1.1 * n / k
    theta_norm_cap = 2.0 * math.sqrt(2.0 * n / k)
    sigma_k_floor = 0.25 * (l / math.sqrt(params.alpha * k + 1.0)) * math.sqrt(2.0 * n / k)

    c_vec = c_ratio = t_norm = s_k = 0
    for trial_rng in rng.spawn(trials):
        theta = sample_theta(params, trial_rng).theta
        c = theta.sum(axis=0)
        if c.min() < c_lo or c.max() > c_hi:
            c_vec += 1
        if c.min() / c.max() < 9.0 / 11.0:
            c_ratio += 1
        gram = theta.T @ theta
        gram = 0.5 * (gram + gram.T)
        eigs, _ = jacobi_eigh(gram)
        if math.sqrt(max(float(eigs[-1]), 0.0)) > theta_norm_cap:
            t_norm += 1
        gram_tb = params.B.T @ gram @ params.B
        eigs_tb, _ = jacobi_eigh(0.5 * (gram_tb + gram_tb.T))
        if math.sqrt(max(float(eigs_tb[0]), 0.0)) < sigma_k_floor:
            s_k += 1
    return ConcentrationReport(
        trials=trials,
        c_vector_violations=c_vec,
        c_ratio_violations=c_ratio,
        theta_norm_violations=t_norm,
        sigma_k_violations=s_k,
        bound_probabilities=concentration_probabilities(params),
    )
