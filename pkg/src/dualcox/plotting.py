"""Figures for verification reports (PNG, rendered off-screen)."""
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.dpi": 100,
}


def _label(report):
    g = report.group or {}
    return f"{g.get('type', '')}{g.get('rank', '')}" or report.theorem


def _status_by_length(rows):
    counts = {}
    for r in rows:
        ell = r.get("length")
        if ell is None:
            continue
        counts.setdefault(ell, {}).setdefault(r["status"], 0)
        counts[ell][r["status"]] += 1
    return counts


def report_figure(report, path):
    """Write a summary figure for ``report`` to ``path``; returns the path.

    Left: elements per reflection length split by outcome.  Right, when
    orbit data is present: orbit size against |Red_T(w)|.
    """
    with plt.rc_context(STYLE):
        has_orbits = any("orbit_size" in r and r.get("red_count") for r in report.rows)
        fig, axes = plt.subplots(1, 2 if has_orbits else 1, figsize=(8 if has_orbits else 4.5, 3.4))
        if not has_orbits:
            axes = [axes]
        ax = axes[0]
        counts = _status_by_length(report.rows)
        if counts:
            lengths = sorted(counts)
            bottom = [0] * len(lengths)
            colours = {"ok": "tab:green", "skip": "lightgray", "fail": "tab:red",
                       "indeterminate": "tab:orange"}
            for status, colour in colours.items():
                vals = [counts[ell].get(status, 0) for ell in lengths]
                if any(vals):
                    ax.bar(lengths, vals, bottom=bottom, color=colour, label=status)
                    bottom = [b + v for b, v in zip(bottom, vals)]
            ax.set_xlabel("reflection length")
            ax.set_ylabel("elements")
            ax.set_xticks(lengths)
            ax.legend(frameon=False)
        else:
            labels = [str(r.get("type", r.get("element"))) for r in report.rows]
            ok = [1 if r["status"] == "ok" else 0 for r in report.rows]
            ax.bar(range(len(labels)), [1] * len(labels),
                   color=["tab:green" if x else "tab:red" for x in ok])
            ax.set_xticks(range(len(labels)))
            ax.set_xticklabels(labels, rotation=60)
            ax.set_yticks([])
        ax.set_title(f"theorem {report.theorem} on {_label(report)} [{report.scope}]")

        if has_orbits:
            ax = axes[1]
            pts = [(r["red_count"], r["orbit_size"], bool(r.get("pqc", r.get("transitive"))))
                   for r in report.rows if r.get("red_count")]
            xs = [p[0] for p in pts]
            top = max(xs)
            ax.plot([1, top], [1, top], color="gray", lw=0.8, ls="--")
            for flag, colour, name in ((True, "tab:blue", "pqc"), (False, "tab:red", "not pqc")):
                sel = [p for p in pts if p[2] == flag]
                if sel:
                    ax.scatter([p[0] for p in sel], [p[1] for p in sel], s=10, c=colour, label=name)
            ax.set_xscale("log")
            ax.set_yscale("log")
            ax.set_xlabel("|Red_T(w)|")
            ax.set_ylabel("Hurwitz orbit size")
            ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
