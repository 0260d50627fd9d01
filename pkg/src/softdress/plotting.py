"""Render result tables to image files with matplotlib (Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from softdress.cli_io.tables import ResultTable  # noqa: E402

PLOTTABLE = ("scan", "cancel", "cloud", "entangle")

RC = {
    "figure.figsize": (6.0, 4.0),
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.5,
    "lines.markersize": 5,
    "savefig.dpi": 120,
    # stable bytes across runs
    "svg.hashsalt": "softdress",
}


def _scan(ax, t):
    lam = t.column("lambda")
    for col, label in (("expD", r"$e^D$"), ("expC", r"$e^C$"), ("expF", r"$e^F$")):
        ax.plot(lam, t.column(col), "o-", label=label)
    ax.set_xscale("log")
    ax.set_xlabel(r"IR cutoff $\lambda$")
    ax.set_ylabel("soft factor")
    ax.legend()


def _cancel(ax, t):
    pts = [(d, c) for d, c in zip(t.column("offshell"), t.column("abs_c_F")) if d > 0 and c > 0]
    ax.loglog([p[0] for p in pts], [p[1] for p in pts], "s-")
    ax.set_xlabel("dressing velocity offset")
    ax.set_ylabel(r"$|c_F|$")


def _cloud(ax, t):
    ax.plot(t.column("log_ratio"), t.column("N"), "o-", label=r"$\langle N\rangle$")
    ax2 = ax.twinx()
    ax2.semilogy(t.column("log_ratio"), t.column("vacuum_overlap"), "^--", color="C1",
                 label="vacuum overlap")
    ax.set_xlabel(r"$\ln(\Delta/\lambda)$")
    ax.set_ylabel("expected soft photons")
    ax2.set_ylabel("vacuum overlap")


def _entangle(ax, t):
    names = [c for c in t.columns if c.startswith("S")]
    ax.bar(range(len(names)), [t.column(c)[0] for c in names])
    ax.set_xticks(range(len(names)), names, rotation=35, ha="right")
    ax.set_ylabel("entropy (nats)")


_DRAW = {"scan": _scan, "cancel": _cancel, "cloud": _cloud, "entangle": _entangle}


def render(table: ResultTable, subcommand: str, path) -> Path:
    """Draw the standard figure for ``subcommand`` and save it to ``path``."""
    if subcommand not in _DRAW:
        raise ValueError(f"no figure defined for subcommand {subcommand!r}")
    path = Path(path)
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        _DRAW[subcommand](ax, table)
        ax.set_title(f"softdress {subcommand}")
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None} if path.suffix == ".png" else None)
        plt.close(fig)
    return path
