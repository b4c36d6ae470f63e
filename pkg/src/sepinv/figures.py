"""Optional PNG/PDF/SVG figures for bound and atom reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path: str) -> None:
    fig.tight_layout()
    # fixed metadata keeps repeated runs byte-stable where the backend allows it
    fig.savefig(path, dpi=120, metadata={"Software": None} if path.endswith(".png") else None)
    plt.close(fig)


def plot_degree_trail(trail: list[dict], title: str, path: str) -> None:
    """Failing stable subsets against the tested degree."""
    degrees = [t["degree"] for t in trail]
    fails = [t["failing_subsets"] for t in trail]
    fig, ax = plt.subplots(figsize=(4.5, 3.0))
    colors = ["tab:green" if t["valid"] else "tab:red" for t in trail]
    ax.bar(degrees, fails, color=colors, width=0.6)
    ax.set_xticks(degrees)
    ax.set_xlabel("degree d")
    ax.set_ylabel("failing stable subsets")
    ax.set_title(title, fontsize=10)
    ax.spines[["top", "right"]].set_visible(False)
    _finish(fig, path)


def plot_atom_lengths(counts: dict[int, int], title: str, path: str) -> None:
    lengths = sorted(counts)
    fig, ax = plt.subplots(figsize=(4.5, 3.0))
    ax.bar(lengths, [counts[k] for k in lengths], color="tab:blue", width=0.6)
    ax.set_xticks(lengths)
    ax.set_xlabel("atom length")
    ax.set_ylabel("count")
    ax.set_title(title, fontsize=10)
    ax.spines[["top", "right"]].set_visible(False)
    _finish(fig, path)
