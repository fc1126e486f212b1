"""Command-line harness: synthetic sweeps, edge-list ingestion, CSV output.

Subcommands: ``generate`` (sample a synthetic instance), ``recover``
(membership recovery from a weighted edge list), ``sweep`` (error/time
curves over a parameter grid), ``check-bounds`` (sample-size
calculator), ``conc-check`` (concentration Monte Carlo), and ``ppi``
(recover, binarise, merge, and export complexes). All randomness flows
from ``--seed``; every numeric CSV field is written with 17 significant
digits so reruns are reproducible.
"""

import argparse
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceFailure, InvalidInput, ParseError
from .evaluation import binarize, entrywise_error, export_complexes, merge_complexes
from .lp import SPECTRAL, recover_all
from .mmsb import (
    EXACT_P,
    MmsbParams,
    WeightedGraph,
    averaging_samples,
    build_probability_matrix,
    make_interaction_matrix,
    sample_adjacency_average,
    sample_theta,
)
from .theory import compute_bounds_from_kappa, run_concentration_check

DEFAULT_N = 5000
DEFAULT_K = 3
DEFAULT_ALPHA = 0.5
DEFAULT_REPEATS = 10

SWEEP_VARIABLES = ("n", "k", "alpha", "delta")
CSV_HEADER = "variable,value,repeat_count,mean_error,std_error,mean_seconds,std_seconds"


@dataclass(frozen=True)
class SweepConfig:
    variable: str
    grid: tuple
    repeats: int = DEFAULT_REPEATS
    base_seed: int = 0
    mode: str = SPECTRAL
    b_kind: str = "diag_random"
    n: int = DEFAULT_N
    k: int = DEFAULT_K
    alpha: float = DEFAULT_ALPHA
    delta: float = 0.3

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise InvalidInput(f"unknown sweep variable {self.variable!r}")
        if not self.grid:
            raise InvalidInput("sweep grid is empty")
        if self.repeats < 1:
            raise InvalidInput(f"repeats={self.repeats} must be positive")
        for value in self.grid:
            _resolve_point(self, value)  # validates each grid value


@dataclass
class SweepRecord:
    value: float
    repeats: int
    mean_error: float
    std_error: float
    mean_seconds: float
    std_seconds: float
    trial_statuses: list = field(default_factory=list)


def _resolve_point(cfg, value):
    n, k, alpha, delta = cfg.n, cfg.k, cfg.alpha, cfg.delta
    if cfg.variable == "n":
        n = int(value)
    elif cfg.variable == "k":
        k = int(value)
    elif cfg.variable == "alpha":
        alpha = float(value)
    else:
        delta = float(value)
        if not 0.0 <= delta <= 1.0:
            raise InvalidInput(f"delta={delta} outside [0, 1]")
    if n < k:
        raise InvalidInput(f"n={n} smaller than k={k}")
    if alpha <= 0:
        raise InvalidInput(f"alpha={alpha} must be positive")
    return n, k, alpha, delta


def _run_trial(cfg, value, point_index, repeat):
    rng = np.random.default_rng([cfg.base_seed, point_index, repeat])
    n, k, alpha, delta = _resolve_point(cfg, value)
    B = make_interaction_matrix(cfg.b_kind, k, delta=delta, rng=rng)
    params = MmsbParams(n=n, k=k, alpha=alpha, B=B)
    theta = sample_theta(params, rng)
    P = build_probability_matrix(theta, B)
    A = sample_adjacency_average(P, averaging_samples(n), rng)
    start = time.perf_counter()
    result = recover_all(A, k, mode=cfg.mode, rng=rng)
    elapsed = time.perf_counter() - start
    error = entrywise_error(result.theta_hat, theta.theta).error
    return error, elapsed


def run_sweep(cfg, out_csv=None):
    """Run the sweep and return one SweepRecord per grid value.

    Recovery time alone is measured; instance generation is excluded.
    A failing trial is recorded in ``trial_statuses`` and skipped by the
    aggregates instead of aborting the sweep.
    """
    records = []
    for point_index, value in enumerate(cfg.grid):
        errors, seconds, statuses = [], [], []
        for repeat in range(cfg.repeats):
            try:
                error, elapsed = _run_trial(cfg, value, point_index, repeat)
            except (InvalidInput, ConvergenceFailure) as exc:
                statuses.append(f"failed: {exc}")
                continue
            statuses.append("ok")
            errors.append(error)
            seconds.append(elapsed)
        err = np.asarray(errors) if errors else np.asarray([math.nan])
        sec = np.asarray(seconds) if seconds else np.asarray([math.nan])
        records.append(
            SweepRecord(
                value=float(value),
                repeats=cfg.repeats,
                mean_error=float(err.mean()),
                std_error=float(err.std()),
                mean_seconds=float(sec.mean()),
                std_seconds=float(sec.std()),
                trial_statuses=statuses,
            )
        )
    if out_csv is not None:
        write_sweep_csv(cfg, records, out_csv)
    return records


def _fmt(x):
    return format(float(x), ".17g")


def write_sweep_csv(cfg, records, path):
    lines = [CSV_HEADER]
    for rec in records:
        lines.append(
            ",".join(
                [
                    cfg.variable,
                    _fmt(rec.value),
                    str(rec.repeats),
                    _fmt(rec.mean_error),
                    _fmt(rec.std_error),
                    _fmt(rec.mean_seconds),
                    _fmt(rec.std_seconds),
                ]
            )
        )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_theta_csv(theta, path):
    """Membership matrix as CSV: n rows, k columns, no header."""
    with open(path, "w", newline="\n") as fh:
        for row in np.atleast_2d(theta):
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_edgelist_tsv(adj, path, names=None, skip_zero=True, include_diagonal=False):
    """Upper-triangle TSV edge list ``name\tname\tweight`` (LF endings).

    With ``include_diagonal`` every node also gets a self-weight line, which
    pins the readers' first-appearance node order to the natural row order
    even when zero-weight edges are skipped.
    """
    n = adj.shape[0]
    if names is None:
        names = [f"n{i}" for i in range(n)]
    with open(path, "w", newline="\n") as fh:
        if include_diagonal:  # the whole block first: it fixes node order
            for i in range(n):
                fh.write(f"{names[i]}\t{names[i]}\t{_fmt(adj[i, i])}\n")
        for i in range(n):
            for j in range(i + 1, n):
                w = adj[i, j]
                if skip_zero and w == 0.0:
                    continue
                fh.write(f"{names[i]}\t{names[j]}\t{_fmt(w)}\n")


def ingest_weighted_edgelist(path):
    """Read a weighted edge list into a graph plus the node-name table.

    Each non-blank line is ``nameA <tab> nameB <tab> weight``. Weights
    must lie in [0, 2]: values above 1 are clamped to 1 (counted as
    warnings, reported on stderr); anything outside [0, 2] fails loudly
    since it usually means the wrong column was exported. Duplicate
    edges keep the maximum weight; unlisted self-weights default to 1.
    """
    index = {}
    names = []
    weights = {}
    clamped = 0
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(
                    f"{path}:{lineno}: expected 'nameA nameB weight', got {len(parts)} fields"
                )
            a, b, w_text = parts
            try:
                w = float(w_text)
            except ValueError:
                raise ParseError(f"{path}:{lineno}: weight {w_text!r} is not a number")
            if not math.isfinite(w) or w < 0.0 or w > 2.0:
                raise ParseError(
                    f"{path}:{lineno}: weight {w} outside [0, 2] (wrong column?)"
                )
            if w > 1.0:
                clamped += 1
                w = 1.0
            for name in (a, b):
                if name not in index:
                    index[name] = len(names)
                    names.append(name)
            key = (min(index[a], index[b]), max(index[a], index[b]))
            weights[key] = max(weights.get(key, 0.0), w)
    if not weights:
        raise ParseError(f"{path}: no edges")
    if clamped:
        print(f"warning: clamped {clamped} weight(s) above 1.0", file=sys.stderr)
    n = len(names)
    adj = np.zeros((n, n))
    for (i, j), w in weights.items():
        adj[i, j] = adj[j, i] = w
    for i in range(n):  # only unlisted self-weights default to 1
        if (i, i) not in weights:
            adj[i, i] = 1.0
    return WeightedGraph(adj, EXACT_P), names


def _interaction_for(args, k, rng):
    return make_interaction_matrix(args.b_kind, k, delta=args.delta, rng=rng)


def _cmd_generate(args):
    rng = np.random.default_rng(args.seed)
    B = _interaction_for(args, args.k, rng)
    params = MmsbParams(n=args.n, k=args.k, alpha=args.alpha, B=B)
    theta = sample_theta(params, rng)
    write_theta_csv(theta.theta, args.out)
    if args.graph_out:
        P = build_probability_matrix(theta, B)
        s = args.s if args.s else averaging_samples(args.n)
        A = sample_adjacency_average(P, s, rng)
        # self-weight lines keep reader node order = generator row order
        write_edgelist_tsv(A.adj, args.graph_out, include_diagonal=True)
    return 0


def _cmd_recover(args):
    graph, _ = ingest_weighted_edgelist(args.infile)
    rng = np.random.default_rng(args.seed)
    result = recover_all(graph, args.k, mode=args.mode, rng=rng)
    write_theta_csv(result.theta_hat, args.out)
    bad = [s for s in result.per_column_status if s != "optimal"]
    if bad:
        print(f"warning: {len(bad)} column(s) not optimal: {bad}", file=sys.stderr)
    return 0


def _cmd_sweep(args):
    grid = []
    for item in args.grid.split(","):
        item = item.strip()
        grid.append(int(item) if args.variable in ("n", "k") else float(item))
    cfg = SweepConfig(
        variable=args.variable,
        grid=tuple(grid),
        repeats=args.repeats,
        base_seed=args.seed,
        mode=args.mode,
        b_kind=args.b_kind,
        n=args.n,
        k=args.k,
        alpha=args.alpha,
        delta=args.delta,
    )
    records = run_sweep(cfg, out_csv=args.out)
    for value, rec in zip(cfg.grid, records):
        print(
            f"{cfg.variable}={value}: mean_error={rec.mean_error:.6f} "
            f"mean_seconds={rec.mean_seconds:.3f}"
        )
    return 0


def _cmd_check_bounds(args):
    epsilon = "auto" if args.epsilon == "auto" else float(args.epsilon)
    bounds = compute_bounds_from_kappa(args.k, args.alpha, args.kappa, args.p, epsilon)
    print(f"kappa = {bounds.kappa:.12g}")
    print(f"w = {bounds.w:.12g}")
    print(f"epsilon1 = {bounds.epsilon1:.12g}")
    print(f"epsilon2 = {bounds.epsilon2:.12g}")
    print(f"epsilon = {bounds.epsilon:.12g}")
    if not bounds.epsilon_in_range:
        print("note: epsilon exceeds min(epsilon1, epsilon2); the recovery "
              "guarantee does not apply at this epsilon")
    if bounds.min_n is None:
        print("min_n = unsatisfiable")
    else:
        print(f"min_n = {bounds.min_n}")
    return 0


def _cmd_conc_check(args):
    rng = np.random.default_rng(args.seed)
    B = _interaction_for(args, args.k, rng)
    params = MmsbParams(n=args.n, k=args.k, alpha=args.alpha, B=B)
    report = run_concentration_check(params, args.trials, rng)
    print(f"trials = {report.trials}")
    print(f"c_vector_violations = {report.c_vector_violations}")
    print(f"c_ratio_violations = {report.c_ratio_violations}")
    print(f"theta_norm_violations = {report.theta_norm_violations}")
    print(f"sigma_k_violations = {report.sigma_k_violations}")
    for name, value in report.bound_probabilities.items():
        print(f"{name} = {value:.6g}")
    return 0


def _cmd_ppi(args):
    graph, names = ingest_weighted_edgelist(args.infile)
    rng = np.random.default_rng(args.seed)
    result = recover_all(graph, args.k, mode=SPECTRAL, rng=rng)
    complexes = binarize(result.theta_hat, threshold=args.threshold)
    merged = merge_complexes(complexes, overlap_threshold=args.merge_threshold)
    export_complexes(merged, args.out, names=names)
    print(f"{len(merged.complexes)} complexes written to {args.out}")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="splp",
        description="Mixed-membership blockmodel generation, recovery, and bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n=True):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--k", type=int, default=DEFAULT_K)
        p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
        if n:
            p.add_argument("--n", type=int, default=DEFAULT_N)

    def b_opts(p):
        p.add_argument("--b-kind", choices=("delta_blend", "diag_random"),
                       default="diag_random")
        p.add_argument("--delta", type=float, default=0.3)

    p = sub.add_parser("generate", help="sample a synthetic instance")
    common(p)
    b_opts(p)
    p.add_argument("--s", type=int, default=0, help="adjacency samples (default ceil(sqrt(n)))")
    p.add_argument("--out", required=True, help="ground-truth membership CSV")
    p.add_argument("--graph-out", default=None, help="also write the sampled graph as TSV")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("recover", help="recover memberships from an edge list")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "spectral"), default="spectral")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="recovered membership CSV")
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("sweep", help="error/time curves over a parameter grid")
    p.add_argument("--variable", choices=SWEEP_VARIABLES, required=True)
    p.add_argument("--grid", required=True, help="comma-separated values")
    p.add_argument("--repeats", type=int, default=DEFAULT_REPEATS)
    p.add_argument("--mode", choices=("exact", "spectral"), default="spectral")
    common(p)
    b_opts(p)
    p.add_argument("--out", required=True, help="sweep CSV path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("check-bounds", help="sample-size bound calculator")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--epsilon", default="auto")
    p.set_defaults(func=_cmd_check_bounds)

    p = sub.add_parser("conc-check", help="concentration Monte Carlo")
    common(p)
    b_opts(p)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=_cmd_conc_check)

    p = sub.add_parser("ppi", help="complex detection on a weighted network")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--threshold", type=float, default=0.5, help="binarisation threshold")
    p.add_argument("--merge-threshold", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="complexes file, one per line")
    p.set_defaults(func=_cmd_ppi)
    return parser


def cli_dispatch(argv=None):
    """Parse and run; exit code 0 on success, 1 on usage error, 2 on failure."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (InvalidInput, ParseError, ConvergenceFailure, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
