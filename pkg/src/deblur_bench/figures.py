"""Figure rendering for benchmark runs (matplotlib, file output only)."""
from __future__ import annotations

from pathlib import Path

import numpy as np


def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_figures(report, images: dict[str, np.ndarray], outdir) -> list[Path]:
    """Write overview, RL-sweep, and rmse-summary PNGs next to the CSV."""
    plt = _plt()
    outdir = Path(outdir)
    written = []

    blur_types = sorted({r.blur_type for r in report.records},
                        key=[r.blur_type for r in report.records].index)

    for blur_type in blur_types:
        panels = [("original", "original"),
                  (f"{blur_type}_blurred", "blurred"),
                  (f"{blur_type}_noisy", "noisy"),
                  (f"{blur_type}_denoised", "denoised")]
        for scenario, label in (("direct", "direct"), ("after_denoise", "after denoise")):
            for method in ("wiener", "rl", "reg"):
                panels.append((f"{blur_type}_{method}_{scenario}",
                               f"{method} ({label})"))
        fig, axes = plt.subplots(3, 4, figsize=(13, 8))
        for ax in axes.flat:
            ax.axis("off")
        for ax, (key, title) in zip(axes.flat, panels):
            if key in images:
                ax.imshow(images[key], cmap="gray", vmin=0, vmax=255)
                ax.set_title(title, fontsize=9)
        fig.suptitle(f"{blur_type} blur pipeline")
        fig.tight_layout()
        path = outdir / f"{blur_type}_overview.png"
        fig.savefig(path, dpi=110)
        plt.close(fig)
        written.append(path)

    if report.rl_sweeps:
        fig, axes = plt.subplots(1, len(blur_types), figsize=(6 * len(blur_types), 4),
                                 squeeze=False)
        for ax, blur_type in zip(axes[0], blur_types):
            for scenario, style in (("direct", "C3-o"), ("after_denoise", "C0-s")):
                curve = report.rl_sweeps.get((blur_type, scenario))
                if curve:
                    ax.plot(range(1, len(curve) + 1), curve, style,
                            markersize=3, label=scenario)
            ax.set_title(f"{blur_type}: RL iteration sweep")
            ax.set_xlabel("iterations")
            ax.set_ylabel("rmse vs original")
            ax.grid(True, alpha=0.3)
            ax.legend()
        fig.tight_layout()
        path = outdir / "rl_sweep.png"
        fig.savefig(path, dpi=110)
        plt.close(fig)
        written.append(path)

    method_records = [r for r in report.records
                      if r.method and r.rmse_vs_original is not None]
    if method_records:
        fig, ax = plt.subplots(figsize=(9, 4.5))
        labels = [f"{r.blur_type}\n{r.method}/{r.stage.removeprefix('deblurred_')}"
                  for r in method_records]
        values = [r.rmse_vs_original for r in method_records]
        colors = ["C3" if r.stage.endswith("direct") else "C0" for r in method_records]
        ax.bar(range(len(values)), values, color=colors)
        ax.set_xticks(range(len(values)), labels, fontsize=7)
        ax.set_ylabel("rmse vs original")
        ax.set_title("deblurring error by method and scenario")
        fig.tight_layout()
        path = outdir / "rmse_summary.png"
        fig.savefig(path, dpi=110)
        plt.close(fig)
        written.append(path)
    return written
