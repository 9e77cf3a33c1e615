"""Render report figures to files next to the delimited output.

All figures go straight to PNG via the Agg backend; nothing interactive.
The CSV stays the canonical record, figures are the human-readable view:
margin curves over the lambda grid, Godbersen ratio profiles over j, and
the certificate coefficient curves.
"""

from __future__ import annotations

import os
from collections import defaultdict


def _pyplot():
    import matplotlib
    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt
    return plt

_LAMBDA_STATEMENTS = ("THM1", "LEM2", "UNBALANCED", "REMARK_EL")


def plot_margin_curves(reports, outdir) -> list[str]:
    """One PNG per lambda-swept statement: margin vs lambda per body."""
    plt = _pyplot()
    paths = []
    for stmt in _LAMBDA_STATEMENTS:
        series = defaultdict(list)
        for r in reports:
            if r.statement_id != stmt or "lambda" not in r.parameters:
                continue
            if r.parameters.get("via") == "certificate":
                continue
            key = "|".join(r.body_labels)
            series[key].append((r.parameters["lambda"], r.margin))
        if not series:
            continue
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for label in sorted(series):
            pts = sorted(series[label])
            ax.plot([p[0] for p in pts], [p[1] for p in pts],
                    marker=".", lw=1, label=label)
        ax.axhline(0.0, color="k", lw=0.8)
        ax.set_xlabel("lambda")
        ax.set_ylabel("margin (rhs - lhs)")
        ax.set_title(f"{stmt}: margins over the lambda grid")
        ax.legend(fontsize=6, ncol=2, loc="best")
        fig.tight_layout()
        path = os.path.join(outdir, f"fig_{stmt.lower()}_margins.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths


def plot_ratio_profiles(profiles: dict, outdir) -> list[str]:
    """Godbersen ratios r_j = V_j / (C(n,j) vol) against j, per body."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label in sorted(profiles):
        ratios = profiles[label]["ratios"]
        ax.plot(range(len(ratios)), ratios, marker="o", lw=1, label=label)
    ax.axhline(1.0, color="k", lw=0.8, ls="--")
    ax.set_xlabel("j")
    ax.set_ylabel("V_j / (C(n,j) vol K)")
    ax.set_title("Godbersen ratio profiles (conjecture: <= 1)")
    ax.legend(fontsize=6, ncol=2, loc="best")
    fig.tight_layout()
    path = os.path.join(outdir, "fig_godbersen_ratios.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return [path]


def plot_certificates(certs, outdir) -> list[str]:
    """Coefficient curves a(lambda), b(lambda), det(lambda) per n."""
    plt = _pyplot()
    paths = []
    for n in sorted({c.n for c in certs}):
        rows = sorted((c for c in certs if c.n == n), key=lambda c: c.lam)
        lams = [c.lam for c in rows]
        fig, ax = plt.subplots(figsize=(7, 4.5))
        ax.plot(lams, [c.a for c in rows], label="a")
        ax.plot(lams, [c.b for c in rows], label="b")
        ax.plot(lams, [c.det for c in rows], label="det")
        ax.axhline(0.0, color="k", lw=0.8)
        ax.set_xlabel("lambda")
        ax.set_title(f"certificate coefficients, n = {n}")
        ax.legend()
        fig.tight_layout()
        path = os.path.join(outdir, f"fig_certificate_n{n}.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths


def plot_single_profile(profile_dict: dict, path) -> str:
    """Ratio profile figure for one body (cmd_profile companion)."""
    plt = _pyplot()
    ratios = profile_dict["ratios"]
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.bar(range(len(ratios)), ratios, color="#4878A8")
    ax.axhline(1.0, color="k", lw=0.8, ls="--")
    ax.set_xlabel("j")
    ax.set_ylabel("V_j / (C(n,j) vol K)")
    ax.set_title(profile_dict.get("label", "profile"))
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)
