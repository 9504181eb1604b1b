#!/usr/bin/env python3
"""Run the full benchmark matrix on the bundled toy datasets.

Writes runs.csv, metrics.csv, correlations.csv and summary.txt into
out/demo/ and prints the per-group strategy winners. Equivalent to:

    vcbench bench --manifest <generated manifest> --out out/demo
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from vcbench.harness import (ExperimentManifest, correlate,  # noqa: E402
                             emit_report, run_experiment)

ROOT = os.path.join(os.path.dirname(__file__), "..")


def main():
    manifest = ExperimentManifest(
        datasets=(
            ("toy_mesh", os.path.join(ROOT, "data", "toy_mesh.txt")),
            ("toy_social", os.path.join(ROOT, "data", "toy_social.txt")),
        ),
        partition_counts=(8, 16),
        repetitions=3,
        seed=1010,
    )
    out_dir = os.path.join(ROOT, "out", "demo")
    records, metric_rows, warnings = run_experiment(manifest, out_dir=out_dir)
    correlations, notices = correlate(records, metric_rows)
    emit_report(records, metric_rows, correlations, out_dir, notices=notices)

    print()
    print(f"{len(records)} runs, {len(metric_rows)} metric rows, "
          f"{len(correlations)} correlation reports")
    for warning in warnings:
        print(f"warning: {warning}")
    with open(os.path.join(out_dir, "summary.txt"), encoding="utf-8") as fh:
        print(fh.read())


if __name__ == "__main__":
    main()
