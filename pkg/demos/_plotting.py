"""Optional matplotlib output for the demos; silently skipped if unavailable."""

import os


def save(fig_builder, name):
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print(f"(matplotlib not installed, skipping {name}.png)")
        return
    out = os.environ.get("IONTRAP_REVIVALS_OUT", "demo_out")
    os.makedirs(out, exist_ok=True)
    fig = fig_builder(plt)
    path = os.path.join(out, f"{name}.png")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    print(f"wrote {path}")
