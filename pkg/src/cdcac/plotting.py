"""SVG rendering of two-variable instances: constraint curves plus excluded x-intervals."""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .covering import CoveringInterval  # noqa: E402
from .poly import Constraint, Polynomial  # noqa: E402

GRID = 512
LABEL_WIDTH = 40

plt.rcParams["svg.hashsalt"] = "cdcac"

Viewport = Tuple[float, float, float, float]


def grid_values(p: Polynomial, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    Z = np.zeros_like(X)
    for exp, c in p.terms.items():
        Z += float(c) * X ** exp[0] * Y ** exp[1]
    return Z


def default_viewport(cover: Sequence[CoveringInterval], witness=None) -> Viewport:
    xs = [0.0]
    for I in cover:
        for b in (I.lower, I.upper):
            if b is not None:
                xs.append(float(b))
    if witness:
        xs.extend(float(v) for v in witness[:1])
    lo, hi = min(xs), max(xs)
    pad = max(2.0, 0.25 * (hi - lo))
    x0, x1 = lo - pad, hi + pad
    half = (x1 - x0) / 2
    yc = float(witness[1]) if witness and len(witness) > 1 else 0.0
    return x0, x1, yc - half, yc + half


def plot_instance(path: str, constraints: Sequence[Constraint], order: Sequence[str],
                  cover: Sequence[CoveringInterval] = (), witness=None,
                  viewport: Optional[Viewport] = None) -> None:
    if len(order) != 2:
        raise ValueError(f"plotting needs exactly 2 variables, the instance has {len(order)}")
    x0, x1, y0, y1 = viewport or default_viewport(cover, witness)
    X, Y = np.meshgrid(np.linspace(x0, x1, GRID), np.linspace(y0, y1, GRID))
    fig, ax = plt.subplots(figsize=(6, 6))
    for I in cover:
        lo = x0 if I.lower is None else float(I.lower)
        hi = x1 if I.upper is None else float(I.upper)
        if I.is_point():
            ax.axvline(lo, color="tab:red", alpha=0.5, lw=1)
        else:
            ax.axvspan(max(lo, x0), min(hi, x1), color="tab:red", alpha=0.12, lw=0)
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    seen = {}
    for c in constraints:
        if c.poly in seen:
            continue
        seen[c.poly] = colors[len(seen) % len(colors)]
        Z = grid_values(c.poly, X, Y)
        if Z.min() <= 0 <= Z.max():
            ax.contour(X, Y, Z, levels=[0], colors=[seen[c.poly]], linewidths=1.2)
        label = f"{c.poly} {c.relation} 0"
        if len(label) > LABEL_WIDTH:
            label = label[:LABEL_WIDTH - 3] + "..."
        ax.plot([], [], color=seen[c.poly], label=label)
    if witness:
        ax.plot([float(witness[0])], [float(witness[1])], "ko", ms=4, label="model")
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_xlabel(order[0])
    ax.set_ylabel(order[1])
    ax.legend(loc="upper right", fontsize="small")
    fig.subplots_adjust(left=0.1, right=0.97, bottom=0.08, top=0.97)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
