"""
Error and timing curves over a parameter grid
---------------------------------------------

Reproduces the synthetic protocol at desk scale: for each grid value,
sample a fresh instance (Theta, B, averaged adjacency with
s = ceil(sqrt(n)) draws), recover memberships in spectral mode, and
score the permutation-matched entrywise error. Only the recovery is
timed. The same sweep is available from the command line:

    splp sweep --variable n --grid 500,1000,2000 --repeats 10 \
        --seed 0 --out sweep_n.csv

and the companion plotting script (plots/render_sweep.py) turns the CSV
into a curve with one-standard-deviation error bars.
"""

from splp.harness import SweepConfig, run_sweep

cfg = SweepConfig(variable="n", grid=(250, 500, 1000), repeats=5, base_seed=0)
records = run_sweep(cfg, out_csv="sweep_n.csv")

print(f"{'n':>6} {'mean err':>10} {'std':>8} {'mean sec':>9}")
for rec in records:
    print(
        f"{int(rec.value):>6} {rec.mean_error:>10.4f} "
        f"{rec.std_error:>8.4f} {rec.mean_seconds:>9.3f}"
    )
print("\nwrote sweep_n.csv")

cfg = SweepConfig(
    variable="delta", grid=(0.0, 0.2, 0.4), repeats=5, base_seed=1,
    n=500, b_kind="delta_blend",
)
records = run_sweep(cfg, out_csv="sweep_delta.csv")
print(f"\n{'delta':>6} {'mean err':>10} {'std':>8}")
for rec in records:
    print(f"{rec.value:>6.1f} {rec.mean_error:>10.4f} {rec.std_error:>8.4f}")
print("\nwrote sweep_delta.csv (off-diagonal interaction makes recovery harder)")
