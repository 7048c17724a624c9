"""Sweep utilization and compare the three schemes' sum-rates.

Reproduces the qualitative picture at desk scale (600 snapshots per point):
joint transmission lifts the downlink everywhere, dummy symbols rescue the
uplink at low and medium load, and everything collapses onto plain JT at
full load. Saves a PNG when matplotlib is available.
"""

import numpy as np

from dtddsim import SimulationConfig, run_sweep

SNAPSHOTS = 600
UTILIZATIONS = (0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0)

cfg = SimulationConfig(utilizations=UTILIZATIONS, snapshots_per_point=SNAPSHOTS,
                       master_seed=314, worker_count="auto")
result = run_sweep(cfg)

by = {(e["scheme"], e["utilization"]): e for e in result.summaries}
schemes = ("baseline", "jt", "jt_ds")

for title, key in (("mean sum-rate [Mbit/s]", "mean_sum_rate_bps"),
                   ("mean uplink sum-rate [Mbit/s]", "mean_ul_sum_rate_bps"),
                   ("mean downlink sum-rate [Mbit/s]", "mean_dl_sum_rate_bps"),
                   ("5th percentile user rate [Mbit/s]",
                    "fifth_percentile_user_rate_bps")):
    print(f"\n=== {title} ===")
    print(f"{'utilization':>12} | " + " | ".join(f"{s:>9}" for s in schemes))
    for u in UTILIZATIONS:
        row = " | ".join(f"{by[(s, u)][key] / 1e6:9.2f}" for s in schemes)
        print(f"{u:>12.3f} | {row}")

print(f"\n({SNAPSHOTS} snapshots per point, shared across schemes; "
      f"seed {cfg.master_seed})")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not available; skipping the figure")
else:
    fig, axes = plt.subplots(2, 2, figsize=(11, 8), sharex=True)
    panels = (("mean_sum_rate_bps", "Average sum-rate"),
              ("mean_ul_sum_rate_bps", "Average uplink sum-rate"),
              ("mean_dl_sum_rate_bps", "Average downlink sum-rate"),
              ("fifth_percentile_user_rate_bps", "5th percentile user rate"))
    for ax, (key, title) in zip(axes.ravel(), panels):
        for scheme, marker in zip(schemes, "os^"):
            ax.plot(UTILIZATIONS,
                    [by[(scheme, u)][key] / 1e6 for u in UTILIZATIONS],
                    marker=marker, label=scheme)
        ax.set_title(title)
        ax.set_ylabel("Mbit/s")
        ax.grid(True, alpha=0.4)
    for ax in axes[1]:
        ax.set_xlabel("system utilization K/N")
    axes[0, 0].legend()
    fig.tight_layout()
    fig.savefig("scheme_comparison.png", dpi=120)
    print("figure saved to scheme_comparison.png")
