"""Matplotlib renderers: similarity-matrix heatmaps and decomposition trees.

Figures are written straight to files (no interactive backend involved), so
these work headless.  matplotlib is imported lazily to keep the non-plotting
paths import-light.
"""

from .engine import DecompositionNode, tree_nodes
from .relation import SimilarityMatrix
from .similarity import format_degree, format_value


def plot_similarity_matrix(matrix: SimilarityMatrix, path: str) -> None:
    """Heatmap of the matrix with the exact 2-decimal degrees annotated."""
    from matplotlib.figure import Figure

    n = len(matrix.values)
    labels = [format_value(v) for v in matrix.values]
    data = [[float(d) for d in row] for row in matrix.entries]

    fig = Figure(figsize=(1.2 * n + 2.5, 1.2 * n + 1.5))
    ax = fig.subplots()
    image = ax.imshow(data, vmin=0.0, vmax=1.0, cmap="viridis")
    ax.set_xticks(range(n), labels, rotation=30, ha="right")
    ax.set_yticks(range(n), labels)
    ax.set_title(f"similarity of {matrix.attribute}")
    for i in range(n):
        for j in range(n):
            shade = "black" if data[i][j] > 0.6 else "white"
            ax.text(
                j,
                i,
                format_degree(matrix.entries[i][j]),
                ha="center",
                va="center",
                color=shade,
            )
    fig.colorbar(image, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)


def _layout(node: DecompositionNode, depth: int, cursor: list[float], pos: dict):
    if not node.children:
        x = cursor[0]
        cursor[0] += 1.0
    else:
        xs = [_layout(child, depth + 1, cursor, pos) for child in node.children]
        x = sum(xs) / len(xs)
    pos[id(node)] = (x, -float(depth))
    return x


def plot_decomposition_tree(root: DecompositionNode, path: str) -> None:
    """Boxes-and-edges drawing of a decomposition tree."""
    from matplotlib.figure import Figure

    pos: dict = {}
    _layout(root, 0, [0.0], pos)
    nodes = list(tree_nodes(root))
    depth = max(-pos[id(n)][1] for n in nodes) + 1
    width = max(pos[id(n)][0] for n in nodes) + 1

    fig = Figure(figsize=(3.0 * width, 1.8 * depth + 1.0))
    ax = fig.subplots()
    for node in nodes:
        x, y = pos[id(node)]
        for child in node.children:
            cx, cy = pos[id(child)]
            ax.plot([x, cx], [y - 0.12, cy + 0.12], color="gray", linewidth=1.0)
        label = "{" + ",".join(node.attrs) + "}\n" + f"{len(node.instance.tuples)} tuples"
        if node.applied is not None:
            label += "\nsplit" + ("" if node.lossless_verified else " (lossy!)")
        face = "#dbeafe" if node.children else "#dcfce7"
        ax.text(
            x,
            y,
            label,
            ha="center",
            va="center",
            fontsize=9,
            bbox={"boxstyle": "round,pad=0.35", "facecolor": face, "edgecolor": "gray"},
        )
    ax.set_xlim(-0.7, width - 0.3)
    ax.set_ylim(-depth + 0.4, 0.6)
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
