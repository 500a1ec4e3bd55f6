"""Weighted term similarity graph from sentence co-occurrence.

Vertices are the ranked terms (identified by their ordinal in the term list);
edges carry Jaccard sentence co-occurrence weights. Edges at or below the
threshold sigma are absent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyInput
from .textpipe import SentenceIndex, Term

DEFAULT_SIGMA = 0.0


@dataclass(frozen=True)
class SimilarityGraph:
    terms: tuple[Term, ...]
    # (u, v, weight) with u < v by vertex ordinal
    edges: tuple[tuple[int, int, float], ...]

    @property
    def n(self) -> int:
        return len(self.terms)

    def weight(self, u: int, v: int) -> float:
        """Edge weight, 0.0 for absent edges."""
        if u > v:
            u, v = v, u
        return self._weight_map().get((u, v), 0.0)

    def neighbors(self, u: int) -> list[tuple[int, float]]:
        return self._adjacency()[u]

    def _weight_map(self) -> dict[tuple[int, int], float]:
        cached = self.__dict__.get("_wm")
        if cached is None:
            cached = {(u, v): w for u, v, w in self.edges}
            object.__setattr__(self, "_wm", cached)
        return cached

    def _adjacency(self) -> list[list[tuple[int, float]]]:
        cached = self.__dict__.get("_adj")
        if cached is None:
            cached = [[] for _ in range(self.n)]
            for u, v, w in self.edges:
                cached[u].append((v, w))
                cached[v].append((u, w))
            object.__setattr__(self, "_adj", cached)
        return cached


def jaccard(sa: frozenset[int] | set[int], sb: frozenset[int] | set[int]) -> float:
    """|sa ∩ sb| / |sa ∪ sb|; 0 when both sets are empty."""
    union = len(sa | sb)
    if union == 0:
        return 0.0
    return len(sa & sb) / union


def build_graph(
    terms: list[Term], index: SentenceIndex, sigma: float = DEFAULT_SIGMA
) -> SimilarityGraph:
    """Pairwise Jaccard over sentence sets; keep edges with weight > sigma."""
    if not terms:
        raise EmptyInput("graph needs at least one term")
    if not 0.0 <= sigma < 1.0:
        raise ValueError("sigma must be in [0, 1)")

    sets = [index.term_sentences.get(t.stem, frozenset()) for t in terms]
    edges = []
    for u in range(len(terms)):
        for v in range(u + 1, len(terms)):
            w = jaccard(sets[u], sets[v])
            if w > sigma:
                edges.append((u, v, w))
    return SimilarityGraph(terms=tuple(terms), edges=tuple(edges))


def graph_to_dict(graph: SimilarityGraph) -> dict:
    """JSON interchange form: vertex array + edge array."""
    return {
        "vertices": [
            {
                "id": i,
                "surface": t.surface,
                "stem": t.stem,
                "frequency": t.frequency,
                "font_size": t.font_size,
                "box": {"w": t.box_width, "h": t.box_height},
            }
            for i, t in enumerate(graph.terms)
        ],
        "edges": [
            {"u": u, "v": v, "weight": round(w, 6)} for u, v, w in graph.edges
        ],
    }


def graph_from_dict(data: dict) -> SimilarityGraph:
    vertices = sorted(data["vertices"], key=lambda v: v["id"])
    terms = tuple(
        Term(
            surface=v["surface"],
            stem=v.get("stem", v["surface"]),
            frequency=v["frequency"],
            font_size=v["font_size"],
            box_width=v["box"]["w"],
            box_height=v["box"]["h"],
        )
        for v in vertices
    )
    edges = tuple(
        (e["u"], e["v"], float(e["weight"])) for e in data["edges"]
    )
    return SimilarityGraph(terms=terms, edges=edges)
