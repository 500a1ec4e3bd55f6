"""End-to-end generation: text -> terms -> graph -> layout -> metrics."""

from __future__ import annotations

from dataclasses import dataclass

from . import metrics
from .graph import DEFAULT_SIGMA, SimilarityGraph, build_graph
from .layout import ForceConfig, Layout, generate_layout, mds_initialize
from .textpipe import DEFAULT_K, DEFAULT_MAX_FONT, DEFAULT_MIN_FONT, build_terms


@dataclass(frozen=True)
class CloudResult:
    graph: SimilarityGraph
    mds_layout: Layout
    layout: Layout
    report: metrics.MetricReport


def create_cloud(
    text: str,
    k: int = DEFAULT_K,
    sigma: float = DEFAULT_SIGMA,
    min_font: float = DEFAULT_MIN_FONT,
    max_font: float = DEFAULT_MAX_FONT,
    seed: int = 0,
    force_config: ForceConfig | None = None,
) -> CloudResult:
    terms, index = build_terms(text, k=k, min_font=min_font, max_font=max_font)
    graph = build_graph(terms, index, sigma=sigma)
    config = force_config or ForceConfig(rng_seed=seed)
    mds_layout = mds_initialize(graph, seed=config.rng_seed)
    from .layout import settle

    layout = settle(graph, mds_layout, config)
    return CloudResult(
        graph=graph,
        mds_layout=mds_layout,
        layout=layout,
        report=metrics.report(graph, layout),
    )
