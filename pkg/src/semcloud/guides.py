"""Display-layer guide data for the three quality metrics.

Adjacency guide: realized edges plus the ten heaviest missed ones (or, with a
focus word, all of its incident edges). Distortion guide: a heat map of the
global distortion value with the focus word hypothetically moved to each grid
cell, plus the five most misplaced words by ideal-length penalty. Compactness
guide: the bounding box and the words touching it.

Distance bases are mixed by design: heat-map cells reuse the metric's box-gap
distance, while ideal-length penalties use center-to-center distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnknownTerm
from .graph import SimilarityGraph
from .layout import Layout
from .metrics import NO_CORRELATION, box_gap, realized_adjacencies

TOP_MISSED = 10
MISPLACED_COUNT = 5
UNRELATED_THRESHOLD = 0.05
DEFAULT_GRID = 40
BOUNDARY_TOLERANCE = 0.5


@dataclass(frozen=True)
class AdjacencyGuide:
    realized: tuple[tuple[int, int, float], ...]
    top_missed: tuple[tuple[int, int, float], ...]
    focus_word: int | None
    # (u, v, weight, realized?) for all edges incident to the focus word
    focus_edges: tuple[tuple[int, int, float, bool], ...]

    def to_dict(self) -> dict:
        return {
            "realized": [[u, v, round(w, 6)] for u, v, w in self.realized],
            "top_missed": [[u, v, round(w, 6)] for u, v, w in self.top_missed],
            "focus_word": self.focus_word,
            "focus_edges": [
                [u, v, round(w, 6), flag] for u, v, w, flag in self.focus_edges
            ],
        }


@dataclass(frozen=True)
class DistortionHeatMap:
    origin: tuple[float, float]
    cell_size: float
    cells: tuple[tuple[float, ...], ...]  # rows of candidate distortion values
    focus_word: int
    misplaced: tuple[int, ...]

    def to_dict(self) -> dict:
        flat = [v for row in self.cells for v in row]
        return {
            "origin": list(self.origin),
            "cell_size": self.cell_size,
            "cells": [[round(v, 6) for v in row] for row in self.cells],
            "focus_word": self.focus_word,
            "misplaced": list(self.misplaced),
            "min": round(min(flat), 6),
            "max": round(max(flat), 6),
        }


@dataclass(frozen=True)
class CompactnessGuide:
    bbox: tuple[float, float, float, float]
    boundary_words: frozenset[int]

    def to_dict(self) -> dict:
        x, y, w, h = self.bbox
        return {
            "bbox": {"x": round(x, 6), "y": round(y, 6), "w": round(w, 6), "h": round(h, 6)},
            "boundary_words": sorted(self.boundary_words),
        }


def _check_term(graph: SimilarityGraph, term_id: int) -> None:
    if not 0 <= term_id < graph.n:
        raise UnknownTerm(f"term id {term_id} not in graph")


def adjacency_guide(
    graph: SimilarityGraph, layout: Layout, focus: int | None = None
) -> AdjacencyGuide:
    _, realized_set = realized_adjacencies(graph, layout)
    realized = tuple(
        (u, v, w) for u, v, w in graph.edges if (u, v) in realized_set
    )
    missed = [(u, v, w) for u, v, w in graph.edges if (u, v) not in realized_set]
    missed.sort(key=lambda e: (-e[2], e[0], e[1]))
    focus_edges: tuple[tuple[int, int, float, bool], ...] = ()
    if focus is not None:
        _check_term(graph, focus)
        focus_edges = tuple(
            (u, v, w, (u, v) in realized_set)
            for u, v, w in graph.edges
            if focus in (u, v)
        )
    return AdjacencyGuide(
        realized=realized,
        top_missed=tuple(missed[:TOP_MISSED]),
        focus_word=focus,
        focus_edges=focus_edges,
    )


class _DistortionCache:
    """Pearson running sums with the focus word's incident edges factored out.

    Lets a candidate position be scored in O(deg(focus)) by re-adding only the
    incident edge distances.
    """

    def __init__(self, graph: SimilarityGraph, layout: Layout, focus: int):
        self.layout = layout
        self.focus = focus
        xs_all = []
        self.incident: list[tuple[int, float]] = []  # (other endpoint, x_e)
        sy = syy = sxy = 0.0
        for u, v, w in graph.edges:
            x = 1.0 - w
            xs_all.append(x)
            if focus in (u, v):
                other = v if u == focus else u
                self.incident.append((other, x))
            else:
                y = box_gap(layout, u, v)
                sy += y
                syy += y * y
                sxy += x * y
        self.n_edges = len(xs_all)
        self.sx = sum(xs_all)
        self.sxx = sum(x * x for x in xs_all)
        self.sy0, self.syy0, self.sxy0 = sy, syy, sxy

    def _gap_from(self, cx: float, cy: float, other: int) -> float:
        lay = self.layout
        f = self.focus
        dx = abs(cx - float(lay.positions[other, 0]))
        dy = abs(cy - float(lay.positions[other, 1]))
        gx = max(0.0, dx - float(lay.widths[f] + lay.widths[other]) / 2)
        gy = max(0.0, dy - float(lay.heights[f] + lay.heights[other]) / 2)
        return math.hypot(gx, gy)

    def distortion_at(self, cx: float, cy: float) -> float:
        n = self.n_edges
        if n < 2:
            return NO_CORRELATION
        sy, syy, sxy = self.sy0, self.syy0, self.sxy0
        for other, x in self.incident:
            y = self._gap_from(cx, cy, other)
            sy += y
            syy += y * y
            sxy += x * y
        var_x = n * self.sxx - self.sx * self.sx
        var_y = n * syy - sy * sy
        if var_x <= 0.0 or var_y <= 0.0:
            return NO_CORRELATION
        delta = (n * sxy - self.sx * sy) / math.sqrt(var_x * var_y)
        return (delta + 1.0) / 2.0


def distortion_heatmap(
    graph: SimilarityGraph,
    layout: Layout,
    focus: int,
    grid: int = DEFAULT_GRID,
) -> DistortionHeatMap:
    """Candidate distortion per grid cell for hypothetical focus positions.

    The cell containing the focus's current position is evaluated at that
    exact position, so it always equals the layout's current distortion.
    """
    _check_term(graph, focus)
    if grid < 2:
        raise ValueError("grid must be >= 2")

    x0, y0, w, h = layout.bbox()
    cell = max(w, h) / grid
    if cell <= 0:
        cell = 1.0
    n_cols = max(1, math.ceil(w / cell))
    n_rows = max(1, math.ceil(h / cell))

    cache = _DistortionCache(graph, layout, focus)
    fx = float(layout.positions[focus, 0])
    fy = float(layout.positions[focus, 1])
    f_col = min(n_cols - 1, max(0, int((fx - x0) / cell)))
    f_row = min(n_rows - 1, max(0, int((fy - y0) / cell)))

    rows = []
    for r in range(n_rows):
        row = []
        for c in range(n_cols):
            if r == f_row and c == f_col:
                row.append(cache.distortion_at(fx, fy))
            else:
                row.append(
                    cache.distortion_at(x0 + (c + 0.5) * cell, y0 + (r + 0.5) * cell)
                )
        rows.append(tuple(row))

    return DistortionHeatMap(
        origin=(x0, y0),
        cell_size=cell,
        cells=tuple(rows),
        focus_word=focus,
        misplaced=tuple(misplaced_words(graph, layout)),
    )


def misplaced_words(graph: SimilarityGraph, layout: Layout) -> list[int]:
    """Five words with the largest summed ideal-length penalties.

    Ideal length per pair is (1 - s) * D / 2 with D the longest
    center-to-center distance; for unrelated pairs placed too close the
    penalty is squared.
    """
    n = layout.n
    if n < 2:
        raise ValueError("layout needs at least 2 words")
    centers = layout.positions
    diff = centers[:, None, :] - centers[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    big_d = float(dist.max())

    sums = [0.0] * n
    for a in range(n):
        for b in range(a + 1, n):
            s = graph.weight(a, b)
            ideal = (1.0 - s) * big_d / 2.0
            delta = ideal - float(dist[a, b])
            if s < UNRELATED_THRESHOLD and delta > 0:
                penalty = delta * delta
            else:
                penalty = abs(delta)
            sums[a] += penalty
            sums[b] += penalty
    order = sorted(range(n), key=lambda i: (-sums[i], i))
    return order[:MISPLACED_COUNT]


def compactness_guide(layout: Layout) -> CompactnessGuide:
    """Bounding box plus the words whose box touches its boundary."""
    if layout.n == 0:
        raise ValueError("layout must be non-empty")
    x0, y0, w, h = layout.bbox()
    x1, y1 = x0 + w, y0 + h
    boundary = set()
    for i in range(layout.n):
        left = float(layout.positions[i, 0] - layout.widths[i] / 2)
        right = float(layout.positions[i, 0] + layout.widths[i] / 2)
        bottom = float(layout.positions[i, 1] - layout.heights[i] / 2)
        top = float(layout.positions[i, 1] + layout.heights[i] / 2)
        if (
            left - x0 <= BOUNDARY_TOLERANCE
            or x1 - right <= BOUNDARY_TOLERANCE
            or bottom - y0 <= BOUNDARY_TOLERANCE
            or y1 - top <= BOUNDARY_TOLERANCE
        ):
            boundary.add(i)
    return CompactnessGuide(bbox=(x0, y0, w, h), boundary_words=frozenset(boundary))
