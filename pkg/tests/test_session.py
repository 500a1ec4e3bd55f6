import numpy as np
import pytest

from conftest import make_graph, make_layout
from semcloud.errors import EmptyHistory, UnknownState, UnknownTerm
from semcloud.graph import build_graph
from semcloud.layout import ForceConfig, generate_layout
from semcloud.session import (
    EditSession,
    InteractionConfig,
    follow_strength_decay,
    select_relevant,
)
from semcloud.textpipe import build_terms


def test_config_theta_validation():
    with pytest.raises(ValueError):
        InteractionConfig(theta=-0.1)
    with pytest.raises(ValueError):
        InteractionConfig(theta=1.1)


def test_decay_is_inverse_depth():
    assert follow_strength_decay(1) == 1.0
    assert follow_strength_decay(2) == 0.5
    assert follow_strength_decay(4) == 0.25


def test_select_relevant_star_filters_by_theta():
    g = make_graph(3, [(0, 1, 0.5), (0, 2, 0.05)])
    tree = select_relevant(g, 0, theta=0.1)
    assert tree.ids() == {1}
    assert tree.members == ((1, 0, 1, 0.5),)


def test_select_relevant_chain_depth_attenuation():
    # depth-2 edge needs w/2 >= theta
    g = make_graph(3, [(0, 1, 0.5), (1, 2, 0.3)])
    assert select_relevant(g, 0, theta=0.1).ids() == {1, 2}
    g2 = make_graph(3, [(0, 1, 0.5), (1, 2, 0.15)])
    assert select_relevant(g2, 0, theta=0.1).ids() == {1}


def test_select_relevant_blocked_parent_blocks_subtree():
    # 1 fails the depth-1 test, so 2 is unreachable through it
    g = make_graph(3, [(0, 1, 0.05), (1, 2, 0.9)])
    assert select_relevant(g, 0, theta=0.1).ids() == set()


def test_select_relevant_first_discovery_is_heaviest_path():
    # 3 is discoverable via 1 (w 0.9 then 0.8) and via 2 (w 0.2 then 0.9);
    # heaviest-first BFS reaches it through 1
    g = make_graph(4, [(0, 1, 0.9), (0, 2, 0.2), (1, 3, 0.8), (2, 3, 0.9)])
    tree = select_relevant(g, 0, theta=0.1)
    parents = {m[0]: m[1] for m in tree.members}
    assert parents[3] == 1


def test_select_relevant_theta_extremes():
    g = make_graph(4, [(0, 1, 0.3), (1, 2, 0.4), (2, 3, 1.0)])
    assert select_relevant(g, 0, theta=0.0).ids() == {1, 2, 3}
    assert select_relevant(g, 0, theta=1.0).ids() == set()
    g_unit = make_graph(2, [(0, 1, 1.0)])
    assert select_relevant(g_unit, 0, theta=1.0).ids() == {1}


def test_select_relevant_unknown_root():
    g = make_graph(2, [(0, 1, 0.5)])
    with pytest.raises(UnknownTerm):
        select_relevant(g, 5, theta=0.1)


def _session_from_text(text: str, k: int = 20, seed: int = 0) -> EditSession:
    terms, index = build_terms(text, k=k, stopwords=frozenset())
    g = build_graph(terms, index)
    lay = generate_layout(g, ForceConfig(rng_seed=seed))
    return EditSession(g, lay, ForceConfig(rng_seed=seed))


_TEXT = (
    "planet orbit star. planet moon orbit. star dust cloud. "
    "moon crater dust. cloud rain. orbit star planet moon."
)


def test_move_word_places_and_resolves():
    s = _session_from_text(_TEXT)
    before = s.current.copy()
    s.move_word(0, (200.0, 150.0))
    assert s.current.positions[0].tolist() == [200.0, 150.0]
    assert s.current.max_overlap_depth() <= 0.5
    assert len(s.history) == 1
    assert s.history[-1].equals(before)


def test_move_word_unknown_raises_without_commit():
    s = _session_from_text(_TEXT)
    with pytest.raises(UnknownTerm):
        s.move_word(99, (0.0, 0.0))
    assert len(s.history) == 0


def test_move_with_neighbors_isolated_word_degenerates():
    g = make_graph(3, [(1, 2, 0.8)])
    lay = make_layout([(0.0, 0.0), (40.0, 0.0), (80.0, 0.0)])
    a = EditSession(g, lay)
    b = EditSession(g, lay)
    a.move_with_neighbors(0, (10.0, 90.0))
    b.move_word(0, (10.0, 90.0))
    assert a.current.equals(b.current)


def test_move_with_neighbors_theta_one_degenerates_bit_exact():
    s1 = _session_from_text(_TEXT)
    s2 = _session_from_text(_TEXT)
    s1.config.theta = 1.0
    s1.move_with_neighbors(2, (300.0, -120.0))
    s2.move_word(2, (300.0, -120.0))
    assert s1.current.equals(s2.current)


def test_move_with_neighbors_pulls_strong_neighbor():
    g = make_graph(
        3, [(0, 1, 0.9)], sizes=[(10.0, 10.0), (10.0, 10.0), (10.0, 10.0)]
    )
    lay = make_layout([(0.0, 0.0), (15.0, 0.0), (0.0, 200.0)])
    s = EditSession(g, lay)
    s.move_with_neighbors(0, (400.0, 0.0))
    # the tied word follows rightward; the unrelated word barely moves
    assert s.current.positions[0].tolist() == [400.0, 0.0]
    assert s.current.positions[1, 0] > 15.0
    assert abs(s.current.positions[2, 0] - 0.0) < 1.0
    assert s.current.max_overlap_depth() <= 0.5


def test_fill_holes_zero_iterations_commits_identical_layout():
    s = _session_from_text(_TEXT)
    s.config.fill_iterations = 0
    before = s.current.copy()
    s.fill_holes()
    assert s.current.equals(before)
    assert len(s.history) == 1


def test_fill_holes_resettles():
    s = _session_from_text(_TEXT)
    s.move_word(0, (500.0, 500.0))
    s.fill_holes()
    assert s.current.max_overlap_depth() <= 0.5
    assert len(s.history) == 2


def test_undo_restores_bit_identical():
    s = _session_from_text(_TEXT)
    before = s.current.copy()
    s.move_word(1, (-300.0, 40.0))
    assert not s.current.equals(before)
    s.undo()
    assert s.current.equals(before)
    assert np.array_equal(s.current.positions, before.positions)


def test_undo_empty_history_raises():
    s = _session_from_text(_TEXT)
    with pytest.raises(EmptyHistory):
        s.undo()


def test_undo_does_not_roll_back_best():
    s = _session_from_text(_TEXT)
    baseline = {name: v for name, (v, _) in s.best.items()}
    s.move_word(0, (0.0, 0.0))
    after_move = {name: v for name, (v, _) in s.best.items()}
    s.undo()
    assert {name: v for name, (v, _) in s.best.items()} == after_move
    for name in baseline:
        assert s.best[name][0] >= baseline[name]


def test_history_bounded():
    s = _session_from_text(_TEXT)
    s.config = InteractionConfig(history_limit=3)
    s.history = type(s.history)(maxlen=3)
    for i in range(6):
        s.move_word(0, (float(i * 20), 0.0))
    assert len(s.history) == 3


def test_save_and_load_states():
    s = _session_from_text(_TEXT)
    s.save_state("checkpoint")
    snap = s.current.copy()
    s.move_word(0, (111.0, 222.0))
    s.load_state("checkpoint")
    assert s.current.equals(snap)
    assert len(s.history) == 2  # move + load both commit
    with pytest.raises(UnknownState):
        s.load_state("missing")


def test_best_snapshots_track_maximum():
    s = _session_from_text(_TEXT)
    from semcloud.metrics import report as metric_report

    for name, (value, lay) in s.best.items():
        assert value == pytest.approx(metric_report(s.graph, lay).value(name))
    s.move_word(0, (1000.0, 1000.0))  # almost surely worsens compactness
    s.move_word(0, (0.0, 0.0))
    report = s.metrics()
    for name in s.best:
        assert s.best[name][0] >= report.value(name) - 1e-12


def test_load_best_commits():
    s = _session_from_text(_TEXT)
    s.move_word(0, (800.0, 0.0))
    s.load_best("compactness")
    assert s.metrics().compactness == pytest.approx(s.best["compactness"][0])
    with pytest.raises(UnknownState):
        s.load_best("nope")


def test_export_import_roundtrip_bit_identical():
    import json

    s = _session_from_text(_TEXT)
    s.move_word(0, (123.456, -78.9))
    s.save_state("a")
    blob = json.dumps(s.export_state())
    s2 = EditSession.import_state(json.loads(blob))
    assert s2.current.equals(s.current)
    assert s2.saved["a"].equals(s.saved["a"])
    assert set(s2.best) == set(s.best)
    for name in s.best:
        assert s2.best[name][0] == s.best[name][0]
        assert s2.best[name][1].equals(s.best[name][1])
    assert s2.graph.edges == s.graph.edges or all(
        (u, v) == (u2, v2) and abs(w - w2) < 1e-6
        for (u, v, w), (u2, v2, w2) in zip(s.graph.edges, s2.graph.edges)
    )
