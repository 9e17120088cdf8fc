"""Report rendering: delimited tables and matplotlib figures for check runs."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .cones import mu_class, nef_sampled_check
from .verify import REFERENCE_NOTES, CheckResult


def write_results_json(results: list[CheckResult], path: Path, extra: dict | None = None):
    payload = {
        "passed": all(r.passed for r in results),
        "checks": [r.to_json() for r in results],
        "reference_notes": REFERENCE_NOTES,
    }
    if extra:
        payload.update(extra)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def write_results_csv(results: list[CheckResult], path: Path):
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["check", "passed", "elapsed_s"])
        for r in results:
            writer.writerow([r.name, "pass" if r.passed else "fail", f"{r.elapsed_s:.3f}"])


def render_check_figure(results: list[CheckResult], path: Path):
    """Horizontal bar chart of per-check runtimes, colored by outcome."""
    names = [r.name for r in results]
    times = [r.elapsed_s for r in results]
    colors = ["#2a9d4e" if r.passed else "#c03a2b" for r in results]
    fig, ax = plt.subplots(figsize=(7, 0.4 * len(results) + 1.2))
    ax.barh(range(len(results)), times, color=colors)
    ax.set_yticks(range(len(results)))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title("reproduction checks (green = pass)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_nef_histogram(values, path: Path, title: str = "sampled pairings"):
    """Histogram of exact pairing values (cast to float only for display)."""
    floats = [float(v) for v in values]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(floats, bins=40, color="#33658a")
    ax.axvline(0.0, color="#c03a2b", linewidth=1)
    ax.set_xlabel("pairing value")
    ax.set_ylabel("count")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report(results: list[CheckResult], outdir: Path, seed: int = 0) -> list[Path]:
    """Write results.json, results.csv and the figures into ``outdir``."""
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    jp = outdir / "results.json"
    write_results_json(results, jp)
    paths.append(jp)
    cp = outdir / "results.csv"
    write_results_csv(results, cp)
    paths.append(cp)
    fp = outdir / "checks.png"
    render_check_figure(results, fp)
    paths.append(fp)
    sample = nef_sampled_check(mu_class(), 2, 400, seed=seed, keep_values=True)
    hp = outdir / "nef_pairings.png"
    render_nef_histogram(
        sample.values, hp, title="mu paired against sampled divisor products (n=2)"
    )
    paths.append(hp)
    return paths
