"""Figure rendering for acceptance reports.

Each function draws one summary figure from the report dictionary and
writes it as a PNG; render_report_figures runs whichever apply to the
data present and returns the written paths.  Rendering is headless (Agg).
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_DPI = 150


def _criterion(report: dict, cid: str) -> Optional[dict]:
    for criterion in report.get("criteria", []):
        if criterion["id"] == cid:
            return criterion
    return None


def figure_mirsky_blocks(report: dict, path: Path) -> bool:
    """Window frequency vs truncated product per block, with allowances."""
    crit = _criterion(report, "C2")
    if crit is None:
        return False
    rows = crit["details"]["blocks"]
    labels = [row["block"] for row in rows]
    empirical = [row["empirical"] for row in rows]
    analytic = [row["analytic"] for row in rows]
    allowance = [row["error_bound"] + 5e-3 for row in rows]
    x = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(6.0, 0.35 * len(rows)), 4.0))
    ax.errorbar(
        x, analytic, yerr=allowance, fmt="_", color="tab:blue",
        capsize=3, label="truncated product ± allowance",
    )
    ax.plot(x, empirical, "k.", markersize=5, label="window frequency")
    ax.set_xticks(list(x), labels, rotation=90, fontsize=7)
    ax.set_ylabel("cylinder value")
    ax.set_title(f"Squarefree-pattern frequencies, {crit['details']['windows']:,} windows")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return True


def figure_correlation_decay(report: dict, path: Path) -> bool:
    """Diagnostic averages against N with their default thresholds."""
    crit = _criterion(report, "C8")
    if crit is None:
        return False
    curve = crit["details"]["curve"]
    checks = crit["details"]["checks"]
    ns = [point["n"] for point in curve]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    styles = {"cesaro_mobius_mean": "tab:blue", "log_two_point_liouville": "tab:red"}
    for key, color in styles.items():
        ax.plot(ns, [abs(point[key]) for point in curve], "o-", color=color, label=key)
        ax.axhline(checks[key]["threshold"], color=color, linestyle=":", linewidth=1)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("N")
    ax.set_ylabel("|average|")
    ax.set_title("Correlation diagnostics (dotted: default thresholds)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return True


def figure_barker_lengths(report: dict, path: Path) -> bool:
    """Count of Barker representatives found at each length."""
    crit = _criterion(report, "C7")
    if crit is None:
        return False
    counts = crit["details"]["counts"]
    lengths = sorted(int(k) for k in counts)
    values = [counts[str(n)] for n in lengths]
    fig, ax = plt.subplots(figsize=(6.0, 3.5))
    ax.bar(lengths, values, color="tab:green")
    ax.set_xticks(lengths)
    ax.set_xlabel("length")
    ax.set_ylabel("sequences found")
    ax.set_title("Barker sequences per length (first entry normalized to +)")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return True


def figure_sampler_frequencies(report: dict, path: Path) -> bool:
    """Sampled squared-window frequencies against predictions, 4-sigma bars."""
    crit = _criterion(report, "C6")
    if crit is None:
        return False
    rows = crit["details"]["frequencies"]
    labels = [row["block"] for row in rows]
    x = range(len(rows))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.errorbar(
        x, [row["predicted"] for row in rows],
        yerr=[row["allowance"] for row in rows],
        fmt="_", color="tab:blue", capsize=4, label="predicted ± allowance",
    )
    ax.plot(x, [row["empirical"] for row in rows], "k.", label="sampled")
    ax.set_xticks(list(x), labels)
    ax.set_xlabel("length-3 squared pattern")
    ax.set_ylabel("frequency")
    ax.set_title(f"Sampler check, {crit['details']['samples']:,} samples")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return True


_FIGURES = {
    "mirsky_blocks.png": figure_mirsky_blocks,
    "correlation_decay.png": figure_correlation_decay,
    "barker_lengths.png": figure_barker_lengths,
    "sampler_frequencies.png": figure_sampler_frequencies,
}


def render_report_figures(report: dict, outdir: Path) -> list[Path]:
    """Render every applicable figure into outdir; returns written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for filename, renderer in _FIGURES.items():
        target = outdir / filename
        if renderer(report, target):
            written.append(target)
    return written
