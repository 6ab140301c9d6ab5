"""Figure rendering to files, next to (never instead of) delimited output.

Everything draws through the Agg backend and writes PNG directly, so
no display is needed.  Metadata is pinned to keep bytes stable across
re-renders of identical data.
"""

from __future__ import annotations

from pathlib import Path

from . import decay

_SAVE_OPTS = {"dpi": 120, "metadata": {"Software": "mobcorr"}}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def save_summatory_figure(points, path) -> Path:
    """|M(x)| on log-log axes (zeros dropped) and m(x) beneath it."""
    plt = _pyplot()
    path = Path(path)
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(7.0, 7.0), sharex=True)
    xs = [p.x for p in points]
    mags = [(p.x, abs(p.mertens)) for p in points if p.mertens != 0]
    if mags:
        top.loglog([x for x, _ in mags], [m for _, m in mags], "o-", lw=1.0)
    top.set_ylabel("|M(x)|")
    bottom.semilogx(xs, [p.reciprocal_sum for p in points], "s-", lw=1.0, color="tab:orange")
    bottom.axhline(0.0, color="gray", lw=0.6)
    bottom.set_xlabel("x")
    bottom.set_ylabel("m(x)")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path


def save_correlation_figure(series, path) -> Path:
    """|R(t, x)| / x against x, log x axis."""
    plt = _pyplot()
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    xs = [x for x, _ in series.checkpoints]
    ratios = [abs(r) / x for x, r in series.checkpoints]
    ax.semilogx(xs, ratios, "o-", lw=1.0)
    ax.set_xlabel("x")
    ax.set_ylabel(f"|R({series.shift_t}, x)| / x")
    ax.set_title(f"{series.function_id} autocorrelation, shift {series.shift_t}")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path


def save_ap_profile_figure(x, profile, path) -> Path:
    """Worst class deviation per modulus, with the unit ceiling drawn."""
    plt = _pyplot()
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot([q for q, _ in profile], [e for _, e in profile], ".", ms=3.0)
    ax.axhline(1.0, color="tab:red", lw=0.8)
    ax.set_ylim(0.0, 1.1)
    ax.set_xlabel("q")
    ax.set_ylabel("max_a |count - x/q|")
    ax.set_title(f"x = {x}")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path


def save_fit_figure(points, fits, path) -> Path:
    """Data with each fitted curve on log-log axes."""
    plt = _pyplot()
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.loglog([x for x, _ in points], [y for _, y in points], "ko", ms=4.0, label="data")
    if points:
        lo = min(x for x, _ in points)
        hi = max(x for x, _ in points)
        grid = _geometric_grid(lo, hi, 64)
        for fit in fits:
            ys = [decay.model_value(fit.model_id, fit.c_hat, fit.C_hat, g) for g in grid]
            ax.loglog(grid, ys, lw=1.0, label=fit.model_id)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_OPTS)
    plt.close(fig)
    return path


def _geometric_grid(lo: int, hi: int, n: int) -> list[int]:
    import math

    if lo < 3:
        lo = 3
    if hi <= lo:
        return [lo]
    out = []
    la, lb = math.log(lo), math.log(hi)
    for i in range(n):
        out.append(round(math.exp(la + (lb - la) * i / (n - 1))))
    return sorted(set(out))
