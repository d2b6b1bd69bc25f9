"""Benchmark figure. matplotlib is imported lazily so the core has no plotting dependency."""

from __future__ import annotations

from pathlib import Path


def plot_bench(rows: list[dict], path: str | Path) -> Path:
    try:
        import matplotlib
    except ImportError:
        raise RuntimeError("plotting needs matplotlib (pip install artifact[plot])") from None
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax_t, ax_l) = plt.subplots(1, 2, figsize=(9, 3.6))
    for c in sorted({r["c"] for r in rows}):
        sel = sorted((r for r in rows if r["c"] == c), key=lambda r: r["m"])
        ms = [r["m"] for r in sel]
        ax_t.plot(ms, [max(r["wall_time"], 1e-6) for r in sel], "o-", ms=3, label=f"c={c}")
        ax_l.plot(ms, [r["levels"] for r in sel], "o", ms=3, label=f"c={c}")
    ax_t.set_xlabel("edges")
    ax_t.set_ylabel("wall time (s)")
    ax_t.set_yscale("log")
    ax_l.set_xlabel("edges")
    ax_l.set_ylabel("recursion levels")
    for ax in (ax_t, ax_l):
        ax.grid(alpha=0.3)
        ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path
