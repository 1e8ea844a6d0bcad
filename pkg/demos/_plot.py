"""Optional plotting: figures are written only when matplotlib is installed."""

from pathlib import Path

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # tables are printed either way
    plt = None

OUT = Path(__file__).resolve().parent / "figures"


def loglog_errors(name, records, title):
    if plt is None:
        return None
    OUT.mkdir(exist_ok=True)
    fig, ax = plt.subplots(figsize=(5, 4))
    for method in dict.fromkeys(r.method for r in records):
        rows = [r for r in records if r.method == method]
        ax.loglog([r.h for r in rows], [r.max_abs_error for r in rows], "o-", label=method)
    ax.set_xlabel("h")
    ax.set_ylabel("max |v - exact|")
    ax.set_title(title)
    ax.legend()
    path = OUT / f"{name}.png"
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def print_table(records):
    print(f"{'method':<16}{'h':>10}{'max error':>14}{'final error':>14}")
    for r in records:
        print(f"{r.method:<16}{r.h:>10g}{r.max_abs_error:>14.4e}{r.final_abs_error:>14.4e}")
