"""Optional matplotlib renderings of the JSON reports.

Each renderer takes the already-computed report object and writes one PNG;
nothing here feeds back into reports or exit codes.  The Agg backend is
forced so the CLI stays headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def magic_figure(magic_rows, path):
    radii = [r for r, _ in magic_rows]
    levels = [m for _, m in magic_rows]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.step(radii, levels, where="mid", marker="o")
    ax.set_xlabel("word norm L")
    ax.set_ylabel("magic level m(L)")
    ax.set_title("restriction depth into the nucleus")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def census_figure(census, path):
    levels = [row.level for row in census.rows]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(levels, [row.cumulative for row in census.rows],
            marker="o", label="cumulative")
    ax.bar(levels, [len(row.new) for row in census.rows],
           alpha=0.4, label="new at level")
    ax.set_xlabel("level")
    ax.set_ylabel("types")
    ax.set_title(f"{census.kind} types (HΣ={census.hsigma})")
    ax.legend()
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def dynatlas_figure(report, path):
    ks = [k for k, _ in report.new_by_k]
    news = [n for _, n in report.new_by_k]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(ks, news)
    ax.set_xlabel("k")
    ax.set_ylabel("new model-map forms")
    ax.set_title(f"dynatlas r={report.r}: {report.total} forms, "
                 f"p={report.p}")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def orbit_figure(rows, path):
    kept = [r for r in rows if r.hypothesis_ok]
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    if kept:
        xs = [r.bound for r in kept]
        ys = [r.orbit_size for r in kept]
        ax.scatter(xs, ys, alpha=0.5)
        top = max(xs)
        ax.plot([1, top], [1, top], "k--", lw=1, label="orbit = bound")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.legend()
    ax.set_xlabel("stabilizer bound")
    ax.set_ylabel("orbit size")
    ax.set_title("orbits under vertex stabilizers")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def degree_figure(degree_reports, path):
    fig, ax = plt.subplots(figsize=(5.5, 3.2))
    for rep in degree_reports:
        ns = [row.n for row in rep.rows]
        ax.plot(ns, [row.under for row in rep.rows],
                marker="o", label=f"{rep.ray} under")
        ax.plot(ns, [row.over for row in rep.rows],
                marker="x", ls="--", label=f"{rep.ray} over")
    ax.set_xlabel("n")
    ax.set_ylabel("local degree bound")
    ax.set_title("local degree sandwich")
    ax.legend(fontsize=7)
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def diameter_figure(report, path):
    ts = [row.t for row in report.rows]
    ratios = [row.ratio for row in report.rows]
    lo, hi = report.band
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(ts, ratios, marker="o")
    if lo:
        ax.axhline(lo, color="gray", ls=":", lw=1)
        ax.axhline(hi, color="gray", ls=":", lw=1)
    ax.set_yscale("log")
    ax.set_xlabel("t")
    ax.set_ylabel("diam · exp(εt)")
    ax.set_title(f"shadow diameter band for {report.ray}")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def checks_figure(results, path):
    passed = sum(1 for r in results if r.passed)
    failed = len(results) - passed
    fig, ax = plt.subplots(figsize=(4, 2.6))
    ax.barh(["passed", "failed"], [passed, failed],
            color=["tab:green", "tab:red"])
    ax.set_title("invariant suite")
    for i, n in enumerate([passed, failed]):
        ax.text(n, i, f" {n}", va="center")
    _save(fig, path)
