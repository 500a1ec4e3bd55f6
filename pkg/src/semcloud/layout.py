"""Initial semantic layout: MDS placement plus a decaying force simulation.

The force phase combines three displacement sources per step: overlap
repulsion along the fastest-resolving axis, similarity-weighted attraction
along graph edges, and a weak pull toward the canvas center. Step strength
decays linearly to zero, after which undamped repulsion-only passes remove
any residual overlap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import NonConvergence
from .graph import SimilarityGraph

# MDS spread relative to average box height; keeps target distances
# commensurate with box sizes.
CANVAS_SCALE_HEIGHTS = 25.0
# Per-step displacement cap, in average box heights.
STEP_CAP_HEIGHTS = 0.5

MDS_MAX_SWEEPS = 300
MDS_REL_TOL = 1e-6
RESOLUTION_PASS_BUDGET = 200


@dataclass
class ForceConfig:
    iterations: int = 1000
    attraction_gain: float = 0.1
    centering_gain: float = 0.01
    overlap_tolerance: float = 0.5
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.attraction_gain < 0 or self.centering_gain < 0:
            raise ValueError("gains must be >= 0")


@dataclass
class Layout:
    """Box centers and extents for every graph vertex (id = row index)."""

    positions: np.ndarray  # (n, 2) float64
    widths: np.ndarray  # (n,) float64
    heights: np.ndarray  # (n,) float64

    @property
    def n(self) -> int:
        return self.positions.shape[0]

    def copy(self) -> "Layout":
        return Layout(self.positions.copy(), self.widths.copy(), self.heights.copy())

    def equals(self, other: "Layout") -> bool:
        return (
            np.array_equal(self.positions, other.positions)
            and np.array_equal(self.widths, other.widths)
            and np.array_equal(self.heights, other.heights)
        )

    def bbox(self) -> tuple[float, float, float, float]:
        """(x, y, w, h) of the tight axis-aligned bounding box."""
        x0 = float(np.min(self.positions[:, 0] - self.widths / 2))
        x1 = float(np.max(self.positions[:, 0] + self.widths / 2))
        y0 = float(np.min(self.positions[:, 1] - self.heights / 2))
        y1 = float(np.max(self.positions[:, 1] + self.heights / 2))
        return x0, y0, x1 - x0, y1 - y0

    def max_overlap_depth(self) -> float:
        return float(
            kernels.max_overlap_depth(self.positions, self.widths / 2, self.heights / 2)
        )


def layout_from_graph(graph: SimilarityGraph, positions: np.ndarray) -> Layout:
    widths = np.array([t.box_width for t in graph.terms], dtype=np.float64)
    heights = np.array([t.box_height for t in graph.terms], dtype=np.float64)
    return Layout(np.ascontiguousarray(positions, dtype=np.float64), widths, heights)


def dissimilarity_matrix(graph: SimilarityGraph, canvas_scale: float) -> np.ndarray:
    """Target MDS distances: (1 - weight) * scale on edges, scale otherwise."""
    n = graph.n
    d = np.full((n, n), canvas_scale, dtype=np.float64)
    np.fill_diagonal(d, 0.0)
    for u, v, w in graph.edges:
        d[u, v] = d[v, u] = (1.0 - w) * canvas_scale
    return d


def stress(positions: np.ndarray, d: np.ndarray) -> float:
    """Sum over pairs of (distance - target)^2, uniform weights."""
    diff = positions[:, None, :] - positions[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    n = positions.shape[0]
    iu = np.triu_indices(n, k=1)
    return float(((dist[iu] - d[iu]) ** 2).sum())


def stress_majorization(
    d: np.ndarray, seed: int, scale: float
) -> tuple[np.ndarray, list[float]]:
    """SMACOF with uniform weights from a seeded random start.

    Returns the final configuration and the stress value after every sweep
    (stress is guaranteed non-increasing along that sequence).
    """
    n = d.shape[0]
    if n == 1:
        return np.zeros((1, 2)), [0.0]

    rng = np.random.default_rng(seed)
    p = rng.standard_normal((n, 2)) * (scale / 2.0)
    history = [stress(p, d)]
    for _ in range(MDS_MAX_SWEEPS):
        diff = p[:, None, :] - p[None, :, :]
        dist = np.sqrt((diff**2).sum(axis=2))
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dist > 0, d / dist, 0.0)
        np.fill_diagonal(ratio, 0.0)
        b = -ratio
        np.fill_diagonal(b, ratio.sum(axis=1))
        p = b @ p / n
        s = stress(p, d)
        prev = history[-1]
        history.append(s)
        if prev > 0 and (prev - s) / prev < MDS_REL_TOL:
            break
    return p - p.mean(axis=0), history


def mds_initialize(
    graph: SimilarityGraph, canvas_scale: float | None = None, seed: int = 0
) -> Layout:
    """Seeded stress-majorization placement of the graph vertices."""
    if canvas_scale is None:
        canvas_scale = default_canvas_scale(graph)
    d = dissimilarity_matrix(graph, canvas_scale)
    positions, _ = stress_majorization(d, seed, canvas_scale)
    return layout_from_graph(graph, positions)


def default_canvas_scale(graph: SimilarityGraph) -> float:
    avg_h = float(np.mean([t.box_height for t in graph.terms]))
    return CANVAS_SCALE_HEIGHTS * (avg_h if avg_h > 0 else 1.0)


def _edge_arrays(graph: SimilarityGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    eu = np.array([e[0] for e in graph.edges], dtype=np.int32)
    ev = np.array([e[1] for e in graph.edges], dtype=np.int32)
    ew = np.array([e[2] for e in graph.edges], dtype=np.float64)
    return eu, ev, ew


def _force_weights(graph: SimilarityGraph) -> np.ndarray:
    """Similarity weights with degree normalization (1 / min endpoint degree).

    Without it, dense graphs pull every vertex a fixed fraction of the way to
    its neighborhood centroid each step, collapsing the layout faster than
    overlap repulsion can resist.
    """
    degree = np.zeros(graph.n, dtype=np.float64)
    for u, v, _ in graph.edges:
        degree[u] += 1
        degree[v] += 1
    return np.array(
        [w / min(degree[u], degree[v]) for u, v, w in graph.edges], dtype=np.float64
    )


def apply_repulsion(layout: Layout) -> np.ndarray:
    """Overlap-resolving displacement per term (fastest-resolution axis)."""
    return np.asarray(
        kernels.repulsion(layout.positions, layout.widths / 2, layout.heights / 2)
    )


def apply_attraction(
    graph: SimilarityGraph,
    layout: Layout,
    attraction_gain: float,
    centering_gain: float,
) -> np.ndarray:
    """Edge attraction scaled by similarity (degree-normalized) plus centering
    pull per term."""
    eu, ev, _ = _edge_arrays(graph)
    ew = _force_weights(graph)
    return np.asarray(
        kernels.attraction(layout.positions, eu, ev, ew, attraction_gain, centering_gain)
    )


def settle(
    graph: SimilarityGraph,
    layout: Layout,
    config: ForceConfig,
    pinned: int = -1,
) -> Layout:
    """Damped force iterations followed by overlap-resolution passes.

    Raises NonConvergence when overlaps above the tolerance survive the
    resolution pass budget.
    """
    result = layout.copy()
    pos = result.positions
    half_w = result.widths / 2
    half_h = result.heights / 2
    eu, ev, _ = _edge_arrays(graph)
    ew = _force_weights(graph)

    if config.iterations > 0:
        cap = STEP_CAP_HEIGHTS * float(np.mean(result.heights))
        kernels.settle_loop(
            pos, half_w, half_h, eu, ev, ew,
            config.iterations, config.attraction_gain, config.centering_gain, cap,
        )

    passes = kernels.resolve_overlaps(
        pos, half_w, half_h, config.overlap_tolerance, RESOLUTION_PASS_BUDGET, pinned
    )
    if passes < 0:
        raise NonConvergence(
            f"overlaps above {config.overlap_tolerance} after "
            f"{RESOLUTION_PASS_BUDGET} resolution passes"
        )
    return result


def resolve_overlaps_only(
    layout: Layout, tolerance: float, pinned: int = -1
) -> Layout:
    """Pure overlap removal (no attraction), optionally pinning one term."""
    result = layout.copy()
    passes = kernels.resolve_overlaps(
        result.positions, result.widths / 2, result.heights / 2,
        tolerance, RESOLUTION_PASS_BUDGET, pinned,
    )
    if passes < 0:
        raise NonConvergence("overlap resolution did not converge")
    return result


def layout_to_dict(graph: SimilarityGraph, layout: Layout) -> dict:
    """JSON interchange form; coordinates rounded to 3 fractional digits."""
    x, y, w, h = layout.bbox()
    return {
        "terms": [
            {
                "id": i,
                "x": round(float(layout.positions[i, 0]), 3),
                "y": round(float(layout.positions[i, 1]), 3),
                "w": round(float(layout.widths[i]), 3),
                "h": round(float(layout.heights[i]), 3),
                "surface": t.surface,
                "font_size": t.font_size,
            }
            for i, t in enumerate(graph.terms)
        ],
        "bbox": {"x": round(x, 3), "y": round(y, 3), "w": round(w, 3), "h": round(h, 3)},
    }


def layout_from_dict(data: dict) -> Layout:
    terms = sorted(data["terms"], key=lambda t: t["id"])
    positions = np.array([[t["x"], t["y"]] for t in terms], dtype=np.float64)
    widths = np.array([t["w"] for t in terms], dtype=np.float64)
    heights = np.array([t["h"] for t in terms], dtype=np.float64)
    return Layout(positions, widths, heights)


def layout_to_svg(
    graph: SimilarityGraph, layout: Layout, with_boxes: bool = False
) -> str:
    """One centered text element per term, optional bounding-box rectangles."""
    x, y, w, h = layout.bbox()
    pad = 10.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{x - pad:.3f} {y - pad:.3f} {w + 2 * pad:.3f} {h + 2 * pad:.3f}">'
    ]
    for i, t in enumerate(graph.terms):
        cx = float(layout.positions[i, 0])
        cy = float(layout.positions[i, 1])
        if with_boxes:
            parts.append(
                f'<rect x="{cx - layout.widths[i] / 2:.3f}" '
                f'y="{cy - layout.heights[i] / 2:.3f}" '
                f'width="{layout.widths[i]:.3f}" height="{layout.heights[i]:.3f}" '
                f'fill="none" stroke="#ccc"/>'
            )
        surface = (
            t.surface.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        )
        parts.append(
            f'<text x="{cx:.3f}" y="{cy:.3f}" font-size="{t.font_size:.3f}" '
            f'text-anchor="middle" dominant-baseline="central">{surface}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def generate_layout(
    graph: SimilarityGraph, config: ForceConfig | None = None
) -> Layout:
    """MDS initialization followed by the full force settle."""
    config = config or ForceConfig()
    initial = mds_initialize(graph, seed=config.rng_seed)
    return settle(graph, initial, config)
