from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from semcloud.graph import SimilarityGraph
from semcloud.layout import Layout
from semcloud.textpipe import Term

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

FIXTURE_NAMES = ("astronomy", "cooking", "cities")


@pytest.fixture(scope="session")
def fixture_texts() -> dict[str, str]:
    return {name: (FIXTURES / f"{name}.txt").read_text("utf-8") for name in FIXTURE_NAMES}


def make_term(surface: str, freq: int = 1, w: float = 10.0, h: float = 10.0) -> Term:
    return Term(
        surface=surface, stem=surface, frequency=freq,
        font_size=10.0, box_width=w, box_height=h,
    )


def make_graph(
    n: int,
    edges: list[tuple[int, int, float]],
    sizes: list[tuple[float, float]] | None = None,
) -> SimilarityGraph:
    """Small hand-built graph; vertices named t0..t{n-1}."""
    if sizes is None:
        sizes = [(10.0, 10.0)] * n
    terms = tuple(
        make_term(f"t{i}", w=sizes[i][0], h=sizes[i][1]) for i in range(n)
    )
    return SimilarityGraph(terms=terms, edges=tuple(sorted(edges)))


def make_layout(
    positions: list[tuple[float, float]],
    sizes: list[tuple[float, float]] | None = None,
) -> Layout:
    n = len(positions)
    if sizes is None:
        sizes = [(10.0, 10.0)] * n
    return Layout(
        positions=np.array(positions, dtype=np.float64),
        widths=np.array([s[0] for s in sizes], dtype=np.float64),
        heights=np.array([s[1] for s in sizes], dtype=np.float64),
    )
