import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_term
from semcloud.errors import EmptyInput
from semcloud.graph import build_graph, graph_from_dict, graph_to_dict, jaccard
from semcloud.textpipe import build_terms, segment_sentences


def test_jaccard_half():
    assert jaccard({1, 2, 3}, {2, 3, 4}) == pytest.approx(0.5)


def test_jaccard_disjoint():
    assert jaccard({1}, {2}) == 0.0


def test_jaccard_identical():
    assert jaccard({3, 7}, {3, 7}) == 1.0


def test_jaccard_both_empty():
    assert jaccard(set(), set()) == 0.0


@given(
    st.frozensets(st.integers(0, 20), max_size=10),
    st.frozensets(st.integers(0, 20), max_size=10),
)
def test_jaccard_symmetric_and_bounded(a, b):
    w = jaccard(a, b)
    assert w == jaccard(b, a)
    assert 0.0 <= w <= 1.0
    if a and a == b:
        assert w == 1.0


def _tiny_corpus():
    # hand-computable: sun in {0,1}, moon in {0}, star in {1,2}, rock in {2}
    text = "Sun moon. Sun star. Star rock."
    return build_terms(text, k=10, stopwords=frozenset())


def test_hand_computed_weights():
    terms, index = _tiny_corpus()
    g = build_graph(terms, index, sigma=0.0)
    ids = {t.stem: i for i, t in enumerate(g.terms)}
    assert g.weight(ids["sun"], ids["moon"]) == pytest.approx(1 / 2)
    assert g.weight(ids["sun"], ids["star"]) == pytest.approx(1 / 3)
    assert g.weight(ids["star"], ids["rock"]) == pytest.approx(1 / 2)
    assert g.weight(ids["moon"], ids["rock"]) == 0.0


def test_sigma_threshold_is_strict():
    terms, index = _tiny_corpus()
    # weights present: 1/2, 1/3, 1/2; sigma = 1/3 must drop the 1/3 edge
    g = build_graph(terms, index, sigma=1 / 3)
    assert sorted(w for _, _, w in g.edges) == pytest.approx([0.5, 0.5])
    g_all = build_graph(terms, index, sigma=0.0)
    assert len(g_all.edges) == 3


def test_sigma_validation():
    terms, index = _tiny_corpus()
    with pytest.raises(ValueError):
        build_graph(terms, index, sigma=1.0)
    with pytest.raises(ValueError):
        build_graph(terms, index, sigma=-0.1)


def test_empty_terms_raises():
    index = segment_sentences("a b.")
    with pytest.raises(EmptyInput):
        build_graph([], index)


def test_edges_canonical_and_weights_valid(fixture_texts):
    terms, index = build_terms(fixture_texts["astronomy"], k=50)
    g = build_graph(terms, index)
    for u, v, w in g.edges:
        assert 0 <= u < v < g.n
        assert 0.0 < w <= 1.0
    assert len({(u, v) for u, v, _ in g.edges}) == len(g.edges)


def test_neighbors_consistent_with_weight(fixture_texts):
    terms, index = build_terms(fixture_texts["cooking"], k=30)
    g = build_graph(terms, index)
    for u in range(g.n):
        for v, w in g.neighbors(u):
            assert g.weight(u, v) == w
            assert g.weight(v, u) == w


def test_isolated_vertex_possible():
    terms, index = build_terms("alpha beta. gamma.", k=10, stopwords=frozenset())
    g = build_graph(terms, index)
    ids = {t.stem: i for i, t in enumerate(g.terms)}
    assert g.neighbors(ids["gamma"]) == []


def test_roundtrip_serialization(fixture_texts):
    terms, index = build_terms(fixture_texts["cities"], k=25)
    g = build_graph(terms, index)
    g2 = graph_from_dict(graph_to_dict(g))
    assert g2.terms == g.terms
    assert len(g2.edges) == len(g.edges)
    for (u, v, w), (u2, v2, w2) in zip(g.edges, g2.edges):
        assert (u, v) == (u2, v2)
        assert w2 == pytest.approx(w, abs=1e-6)


def test_single_term_graph_has_no_edges():
    terms = [make_term("solo")]
    index = segment_sentences("solo.")
    g = build_graph(terms, index)
    assert g.n == 1 and g.edges == ()
