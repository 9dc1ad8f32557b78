"""Optional static plots (matplotlib is an optional dependency)."""
from __future__ import annotations


def _pyplot():
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as exc:  # pragma: no cover - depends on the environment
        raise RuntimeError("plotting needs matplotlib (pip install bdivalg[plots])") from exc
    return plt


def _slice(v):
    # rank-2 rays drawn on the segment a + b = 1 (signed coordinates allowed)
    s = float(v[0]) + float(v[1])
    return float(v[0]) / s if s else float(v[0])


def plot_decomposition(dec, path: str) -> None:
    """Pieces of a rank-2 PL decomposition as intervals on the slice a + b = 1."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 2.2))
    for k, piece in enumerate(dec.pieces):
        xs = sorted(_slice(g) for g in piece.cone.generators)
        ax.plot([xs[0], xs[-1]], [k % 2, k % 2], lw=6)
        label = ", ".join(str(c) for c in piece.functional)
        ax.text((xs[0] + xs[-1]) / 2, k % 2 + 0.15, label, ha="center", fontsize=7)
    ax.set_yticks([])
    ax.set_xlabel("a / (a + b)")
    ax.set_ylim(-0.5, 1.6)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_walk(report, path: str) -> None:
    """Checkpoint distances d_n and block maxima against n, log-log."""
    plt = _pyplot()
    ns = [c["n"] for c in report.checkpoints]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.loglog(ns, [max(c["d"], 1e-300) for c in report.checkpoints], "o-", label="d_n at checkpoints")
    ax.loglog(ns, [max(c["block_max"], 1e-300) for c in report.checkpoints], "s--", label="block max")
    ax.set_xlabel("n")
    ax.set_ylabel("distance to qx")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
