"""Figure rendering for CLI reports.

Each command gets a small set of PNG figures built from the same rows that
feed its CSV table, written into the requested directory. matplotlib is
imported lazily with the Agg backend so the computation path carries no
graphics dependency.
"""

from __future__ import annotations

import math
import os


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _save(fig, outdir: str, name: str) -> str:
    path = os.path.join(outdir, name)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    return path


def _batch_figures(plt, report, rows, outdir):
    paths = []
    taus = sorted({row["tau"] for row in rows})
    picks = [taus[0], taus[len(taus) // 3], taus[2 * len(taus) // 3], taus[-2]]
    fig, ax = plt.subplots(figsize=(6, 4))
    for tau in picks:
        pts = [(r["v"], r["bid_winner_pay"]) for r in rows if r["tau"] == tau]
        pts = [(v, b) for v, b in pts if not math.isnan(b)]
        if pts:
            label = f"T = {next(r['T'] for r in rows if r['tau'] == tau):.2f}"
            ax.plot(*zip(*pts), label=label)
    vs = sorted({r["v"] for r in rows})
    ax.plot(vs, [v / 2 for v in vs], "k--", lw=1, label="v/2 (no shading)")
    ax.set_xlabel("valuation v")
    ax.set_ylabel("equilibrium bid")
    ax.set_title("Batch-auction bid shading by inclusion probability")
    ax.legend()
    paths.append(_save(fig, outdir, "batch_bids.png"))
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    pts = sorted({(r["tau"], r["payoff"]) for r in rows})
    ax.plot(*zip(*pts))
    ax.set_xlabel("arrival time tau")
    ax.set_ylabel("interim payoff")
    ax.set_title("Interim payoff 1/2 - T(tau)/3")
    paths.append(_save(fig, outdir, "batch_payoff.png"))
    plt.close(fig)
    return paths


def _boost_figures(plt, report, rows, outdir):
    fig, ax = plt.subplots(figsize=(6, 4))
    vs = [r["v"] for r in rows]
    for col, style in (
        ("pi_fast_all_pay", "-"),
        ("pi_slow_all_pay", "-"),
        ("pi_fast_first_price", "--"),
        ("pi_slow_first_price", "--"),
    ):
        ax.plot(vs, [r[col] for r in rows], style, label=col.replace("pi_", ""))
    ax.set_xlabel("valuation v")
    ax.set_ylabel("boost pi")
    ax.set_title("Time-boost signaling strategies")
    ax.legend(fontsize=8)
    path = _save(fig, outdir, "boost_strategies.png")
    plt.close(fig)
    return [path]


def _latency_figures(plt, report, rows, outdir):
    paths = []
    deltas = [r["delta"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(deltas, [r["sigma"] for r in rows])
    ax.set_xlabel("delay delta")
    ax.set_ylabel("sigma(delta)")
    ax.set_title("Equilibrium delay CDF")
    paths.append(_save(fig, outdir, "latency_cdf.png"))
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(deltas, [r["expected_profit"] for r in rows])
    lo = report["closed_form"]["delta_lo"]
    hi = report["closed_form"]["delta_hi"]
    ax.axvspan(lo, hi, alpha=0.15, label="support")
    ax.set_xlabel("own delay delta")
    ax.set_ylabel("expected profit")
    ax.set_title("Investment profit against the mixed strategy")
    ax.legend()
    paths.append(_save(fig, outdir, "latency_profit.png"))
    plt.close(fig)
    return paths


def _compare_figures(plt, report, rows, outdir):
    paths = []
    deltas = [r["delta"] for r in rows]
    marker = "o" if len(rows) < 3 else None
    for stem, cols in (
        ("welfare", ("welfare_batch", "welfare_boost")),
        ("revenue", ("revenue_batch", "revenue_boost")),
        ("misallocation", ("misalloc_batch", "misalloc_boost")),
    ):
        fig, ax = plt.subplots(figsize=(6, 4))
        for col in cols:
            ax.plot(deltas, [r[col] for r in rows], label=col, marker=marker)
        ax.set_xlabel("latency difference delta")
        ax.set_ylabel(stem)
        ax.set_title(f"Batch vs time boost: {stem}")
        ax.legend()
        paths.append(_save(fig, outdir, f"compare_{stem}.png"))
        plt.close(fig)
    return paths


def _verify_figures(plt, report, rows, outdir):
    fig, ax = plt.subplots(figsize=(7, 4))
    names = [r["audit"] for r in rows]
    gains = [max(r["max_gain"], 1e-18) for r in rows]  # log scale floor
    colors = ["tab:green" if r["status"] == "pass"
              else "tab:red" if r["status"] == "fail" else "tab:gray" for r in rows]
    ax.barh(names, gains, color=colors)
    ax.set_xscale("log")
    ax.set_xlabel("max deviation gain")
    ax.set_title("Best-response certification")
    path = _save(fig, outdir, "verify_gains.png")
    plt.close(fig)
    return [path]


_RENDERERS = {
    "batch": _batch_figures,
    "boost": _boost_figures,
    "latency": _latency_figures,
    "compare": _compare_figures,
    "verify": _verify_figures,
}


def render_figures(command: str, report: dict, rows: list[dict], outdir: str) -> list[str]:
    """Render the command's figures into outdir; returns the written paths."""
    os.makedirs(outdir, exist_ok=True)
    plt = _pyplot()
    return _RENDERERS[command](plt, report, rows, outdir)
