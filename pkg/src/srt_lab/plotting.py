"""Matplotlib rendering of sweep tables, used by the CLI report path."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .analytic import Method, Scheme  # noqa: E402

_COLORS = {
    Scheme.DIRECT: "tab:gray",
    Scheme.SINGLE_RELAY: "tab:blue",
    Scheme.MULTI_RELAY: "tab:red",
}

_LABELS = {
    Scheme.DIRECT: "direct",
    Scheme.SINGLE_RELAY: "single-relay selection",
    Scheme.MULTI_RELAY: "multi-relay selection",
}


def _curves(rows):
    """Group successful rows into loci keyed by (scheme, n_relays, mc?)."""
    groups = {}
    for row in rows:
        if row.point is None:
            continue
        key = (row.scheme, row.n_relays, row.method is Method.MONTE_CARLO)
        groups.setdefault(key, []).append(row)
    return groups


def render_snr_sweep(rows, path):
    fig, axes = plt.subplots(1, 2, figsize=(11, 4.2), sharex=True)
    for (scheme, n, is_mc), group in sorted(_curves(rows).items()):
        group = sorted(group, key=lambda r: r.gamma_db)
        x = [r.gamma_db for r in group]
        label = _LABELS[scheme] + (" (N=%d)" % n if n else "")
        for ax, field, err_field in (
            (axes[0], "op", "op_stderr"),
            (axes[1], "ip", "ip_stderr"),
        ):
            y = [getattr(r, field) for r in group]
            if is_mc:
                err = [getattr(r, err_field) for r in group]
                ax.errorbar(x, y, yerr=err, fmt="o", ms=4, capsize=2,
                            color=_COLORS[scheme], label=label + " (sim)")
            else:
                ax.semilogy(x, y, "-", color=_COLORS[scheme], label=label)
    axes[0].set_ylabel("outage probability")
    axes[1].set_ylabel("intercept probability")
    for ax in axes:
        ax.set_xlabel("transmit SNR (dB)")
        ax.set_yscale("log")
        ax.grid(True, which="both", ls="--", alpha=0.4)
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_srt_curve(rows, path):
    fig, ax = plt.subplots(figsize=(6.4, 5.0))
    groups = _curves(rows)
    n_seen = sorted({n for (_, n, _) in groups if n > 0})
    dashes = ["-", "--", ":", "-."]
    for (scheme, n, is_mc), group in sorted(groups.items()):
        group = sorted(group, key=lambda r: r.gamma_db)
        pts = [(r.op, r.ip) for r in group if r.op > 0 and r.ip > 0]
        if not pts:
            continue
        x = [p[0] for p in pts]
        y = [p[1] for p in pts]
        label = _LABELS[scheme] + (" (N=%d)" % n if n else "")
        if is_mc:
            style = "o"
        elif n in n_seen:
            style = dashes[n_seen.index(n) % len(dashes)]
        else:
            style = "-"
        ax.loglog(x, y, style, ms=4, color=_COLORS[scheme], label=label)
    ax.set_xlabel("outage probability")
    ax.set_ylabel("intercept probability")
    ax.grid(True, which="both", ls="--", alpha=0.4)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
