#!/usr/bin/env python3
"""Render a sweep CSV as a curve with one-standard-deviation error bars.

Usage:
    python render_sweep.py <sweep.csv> <x_label> <y_field> <out.png>

``y_field`` is ``mean_error`` or ``mean_seconds``; the matching stddev
column supplies the error bars. The CSV must carry the sweep harness
columns: variable,value,repeat_count,mean_error,std_error,mean_seconds,
std_seconds. Rendering is a pure function of the CSV contents: a fixed
style sheet and stripped metadata keep repeated renders byte-identical.
"""

import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

REQUIRED_COLUMNS = (
    "variable",
    "value",
    "repeat_count",
    "mean_error",
    "std_error",
    "mean_seconds",
    "std_seconds",
)
Y_FIELDS = {
    "mean_error": ("std_error", "entrywise error"),
    "mean_seconds": ("std_seconds", "seconds"),
}
STYLE_FILE = Path(__file__).with_name("sweep.mplstyle")


class SweepCsvError(ValueError):
    """The CSV does not match the sweep harness contract."""


def load_sweep_csv(path):
    """Rows of the sweep CSV as dicts with float-valued numeric fields."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [col for col in REQUIRED_COLUMNS if col not in header]
        if missing:
            raise SweepCsvError(f"{path}: missing column(s) {', '.join(missing)}")
        rows = []
        for row in reader:
            parsed = {"variable": row["variable"]}
            for col in REQUIRED_COLUMNS[1:]:
                try:
                    parsed[col] = float(row[col])
                except ValueError:
                    raise SweepCsvError(f"{path}: non-numeric {col}={row[col]!r}")
            rows.append(parsed)
    if not rows:
        raise SweepCsvError(f"{path}: no data rows")
    return rows


def build_figure(rows, x_label, y_field):
    """Errorbar figure for one sweep; returns the matplotlib figure."""
    if y_field not in Y_FIELDS:
        raise SweepCsvError(
            f"unknown y_field {y_field!r} (choose from {', '.join(Y_FIELDS)})"
        )
    std_field, y_label = Y_FIELDS[y_field]
    xs = [row["value"] for row in rows]
    ys = [row[y_field] for row in rows]
    errs = [row[std_field] for row in rows]
    with plt.style.context(str(STYLE_FILE)):
        fig, ax = plt.subplots()
        ax.errorbar(xs, ys, yerr=errs, marker="o", capsize=3)
        ax.set_xlabel(x_label)
        ax.set_ylabel(y_label)
        ax.set_title(f"{y_field} vs {x_label}")
    return fig


def render_sweep(csv_path, x_label, y_field, out_image_path):
    """Load, plot, and write the image; returns the figure for inspection."""
    rows = load_sweep_csv(csv_path)
    fig = build_figure(rows, x_label, y_field)
    fig.savefig(out_image_path, metadata={"Software": None})
    return fig


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 4:
        print(__doc__.strip(), file=sys.stderr)
        return 1
    csv_path, x_label, y_field, out_path = argv
    try:
        fig = render_sweep(csv_path, x_label, y_field, out_path)
    except (SweepCsvError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    plt.close(fig)
    print(f"wrote {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
