"""Layout quality metrics: realized adjacencies, distortion, compactness.

Adjacency uses the 20%-inflation rule on the smaller box; distortion is the
Pearson correlation between edge dissimilarities and realized box-gap
distances, mapped to [0, 1]; compactness is summed box area over bounding-box
area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import SimilarityGraph
from .layout import Layout

ADJACENCY_INFLATION = 1.2
NO_CORRELATION = 0.5

Box = tuple[float, float, float, float]  # (cx, cy, w, h)


@dataclass(frozen=True)
class MetricReport:
    realized_adjacencies: float
    distortion: float
    compactness: float
    realized_edges: frozenset[tuple[int, int]]

    def to_dict(self) -> dict:
        return {
            "ra": round(self.realized_adjacencies, 6),
            "distortion": round(self.distortion, 6),
            "compactness": round(self.compactness, 6),
            "realized_edges": sorted([u, v] for u, v in self.realized_edges),
        }

    def value(self, name: str) -> float:
        return {
            "ra": self.realized_adjacencies,
            "distortion": self.distortion,
            "compactness": self.compactness,
        }[name]


METRIC_NAMES = ("ra", "distortion", "compactness")


def _boxes_overlap(a: Box, b: Box) -> bool:
    """Closed overlap test: shared boundary counts."""
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    return (
        abs(ax - bx) <= (aw + bw) / 2 and abs(ay - by) <= (ah + bh) / 2
    )


def is_adjacent(box_a: Box, box_b: Box) -> bool:
    """Inflate the smaller box (tie: first argument) by 20% about its center
    and test for closed overlap with the other box."""
    area_a = box_a[2] * box_a[3]
    area_b = box_b[2] * box_b[3]
    if area_b < area_a:
        small, large = box_b, box_a
    else:
        small, large = box_a, box_b
    inflated = (
        small[0],
        small[1],
        small[2] * ADJACENCY_INFLATION,
        small[3] * ADJACENCY_INFLATION,
    )
    return _boxes_overlap(inflated, large)


def term_box(layout: Layout, i: int) -> Box:
    return (
        float(layout.positions[i, 0]),
        float(layout.positions[i, 1]),
        float(layout.widths[i]),
        float(layout.heights[i]),
    )


def box_gap(layout: Layout, u: int, v: int) -> float:
    """Minimum Euclidean distance between two boxes; 0 when overlapping."""
    dx = abs(float(layout.positions[u, 0] - layout.positions[v, 0]))
    dy = abs(float(layout.positions[u, 1] - layout.positions[v, 1]))
    gx = max(0.0, dx - float(layout.widths[u] + layout.widths[v]) / 2)
    gy = max(0.0, dy - float(layout.heights[u] + layout.heights[v]) / 2)
    return math.hypot(gx, gy)


def realized_adjacencies(
    graph: SimilarityGraph, layout: Layout
) -> tuple[float, frozenset[tuple[int, int]]]:
    """Weight share of graph edges whose boxes touch under the inflation rule.

    Defined as 1 (vacuous) for edgeless graphs.
    """
    if not graph.edges:
        return 1.0, frozenset()
    realized = set()
    realized_weight = 0.0
    total_weight = 0.0
    for u, v, w in graph.edges:
        total_weight += w
        if is_adjacent(term_box(layout, u), term_box(layout, v)):
            realized.add((u, v))
            realized_weight += w
    return realized_weight / total_weight, frozenset(realized)


def pearson(xs: list[float], ys: list[float]) -> float | None:
    """Standard two-pass Pearson correlation; None on degenerate variance."""
    n = len(xs)
    if n < 2:
        return None
    mx = sum(xs) / n
    my = sum(ys) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        return None
    return sxy / math.sqrt(sxx * syy)


def distortion(graph: SimilarityGraph, layout: Layout) -> float:
    """(pearson(dissimilarity, box gap) + 1) / 2 over graph edges.

    Returns 0.5 (no correlation) on degenerate inputs.
    """
    xs = [1.0 - w for _, _, w in graph.edges]
    ys = [box_gap(layout, u, v) for u, v, _ in graph.edges]
    delta = pearson(xs, ys)
    if delta is None:
        return NO_CORRELATION
    return (delta + 1.0) / 2.0


def compactness(layout: Layout) -> float:
    """Summed box area over bounding-box area, clamped to 1.

    Values above 1 only occur on unsettled (overlapping) layouts.
    """
    if layout.n == 0:
        raise ValueError("layout must be non-empty")
    used = float((layout.widths * layout.heights).sum())
    _, _, w, h = layout.bbox()
    total = w * h
    if total <= 0:
        return 1.0
    return min(1.0, used / total)


def report(graph: SimilarityGraph, layout: Layout) -> MetricReport:
    ra, realized = realized_adjacencies(graph, layout)
    return MetricReport(
        realized_adjacencies=ra,
        distortion=distortion(graph, layout),
        compactness=compactness(layout),
        realized_edges=realized,
    )
