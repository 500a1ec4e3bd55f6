"""Stateful editing engine: drag, neighbors-follow, fill-holes, undo,
named saved states, and automatic best-metric snapshots.

A session is a single-writer state machine around one layout. Every mutation
pushes the previous layout onto a bounded history stack, recomputes the
metric report and updates the per-metric best snapshots.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

import numpy as np

from . import kernels, metrics
from .errors import EmptyHistory, NonConvergence, UnknownState, UnknownTerm
from .graph import SimilarityGraph, graph_from_dict, graph_to_dict
from .layout import (
    RESOLUTION_PASS_BUDGET,
    STEP_CAP_HEIGHTS,
    ForceConfig,
    Layout,
    settle,
)

PHASE2_ITERATIONS = 100


@dataclass
class InteractionConfig:
    theta: float = 0.1
    anchor_gain: float = 0.05
    fill_iterations: int = 300
    neighbor_iterations: int = 300
    history_limit: int = 100
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError("theta must be in [0, 1]")


def follow_strength_decay(depth: int) -> float:
    """Edge strength multiplier by BFS depth; depth-1 edges run at full
    strength, deeper edges are attenuated proportionally to their depth."""
    return 1.0 / depth


@dataclass(frozen=True)
class RelevantVertexTree:
    root: int
    # (term id, parent id, depth >= 1, edge weight to parent)
    members: tuple[tuple[int, int, int, float], ...]

    def ids(self) -> set[int]:
        return {m[0] for m in self.members}


def select_relevant(
    graph: SimilarityGraph, root: int, theta: float
) -> RelevantVertexTree:
    """BFS selection of the words that should follow a move of `root`.

    Neighbors are visited heaviest-edge first (ties by ordinal); a vertex at
    depth d joins iff its BFS parent joined and weight/d >= theta.
    """
    if not 0 <= root < graph.n:
        raise UnknownTerm(f"term id {root} not in graph")

    visited = {root}
    joined = {root}
    members: list[tuple[int, int, int, float]] = []
    queue: deque[tuple[int, int]] = deque([(root, 0)])
    while queue:
        u, depth = queue.popleft()
        for v, w in sorted(graph.neighbors(u), key=lambda t: (-t[1], t[0])):
            if v in visited:
                continue
            visited.add(v)
            d = depth + 1
            queue.append((v, d))
            if u in joined and w / d >= theta:
                joined.add(v)
                members.append((v, u, d, w))
    return RelevantVertexTree(root=root, members=tuple(members))


class EditSession:
    def __init__(
        self,
        graph: SimilarityGraph,
        layout: Layout,
        force_config: ForceConfig | None = None,
        config: InteractionConfig | None = None,
    ):
        self.graph = graph
        self.force_config = force_config or ForceConfig()
        self.config = config or InteractionConfig()
        self.current = layout.copy()
        self.history: deque[Layout] = deque(maxlen=self.config.history_limit)
        self.saved: dict[str, Layout] = {}
        self.best: dict[str, tuple[float, Layout]] = {}
        self._report = metrics.report(graph, self.current)
        self._update_best()

    # -- state plumbing ----------------------------------------------------

    def metrics(self) -> metrics.MetricReport:
        return self._report

    def previous(self) -> Layout | None:
        return self.history[-1] if self.history else None

    def _update_best(self) -> None:
        for name in metrics.METRIC_NAMES:
            value = self._report.value(name)
            if name not in self.best or value > self.best[name][0]:
                self.best[name] = (value, self.current.copy())

    def _commit(self, new_layout: Layout) -> Layout:
        self.history.append(self.current)
        self.current = new_layout
        self._report = metrics.report(self.graph, self.current)
        self._update_best()
        return self.current

    def _check_term(self, word: int) -> None:
        if not 0 <= word < self.graph.n:
            raise UnknownTerm(f"term id {word} not in graph")

    # -- edit operations ---------------------------------------------------

    def move_word(self, word: int, target: tuple[float, float]) -> Layout:
        """Place the word at target, then resolve induced overlaps with the
        moved word pinned."""
        self._check_term(word)
        new = self.current.copy()
        new.positions[word, 0] = target[0]
        new.positions[word, 1] = target[1]
        self._resolve(new, pinned=word)
        return self._commit(new)

    def move_with_neighbors(self, word: int, target: tuple[float, float]) -> Layout:
        """Move the word and pull its BFS-selected strong neighbors along,
        restrained by anchoring forces toward their pre-move positions."""
        self._check_term(word)
        tree = select_relevant(self.graph, word, self.config.theta)
        if not tree.members:
            return self.move_word(word, target)

        new = self.current.copy()
        anchors = self.current.positions.copy()
        new.positions[word, 0] = target[0]
        new.positions[word, 1] = target[1]

        # phase 1: anchors + tree-edge attraction only, moved word pinned
        tree_eu = np.array([m[1] for m in tree.members], dtype=np.int32)
        tree_ev = np.array([m[0] for m in tree.members], dtype=np.int32)
        tree_ew = np.array(
            [m[3] * follow_strength_decay(m[2]) for m in tree.members],
            dtype=np.float64,
        )
        self._damped_phase(
            new,
            anchors,
            self.config.neighbor_iterations,
            pinned=word,
            tree_edges=(tree_eu, tree_ev, tree_ew),
            with_repulsion=False,
        )

        # phase 2: retarget anchors, reactivate overlap removal
        anchors = new.positions.copy()
        self._damped_phase(
            new, anchors, PHASE2_ITERATIONS, pinned=word,
            tree_edges=None, with_repulsion=True,
        )
        self._resolve(new, pinned=word)
        return self._commit(new)

    def fill_holes(self) -> Layout:
        """Recompaction: rerun the full force system with a fresh decay ramp."""
        if self.config.fill_iterations == 0:
            return self._commit(self.current.copy())
        cfg = replace(self.force_config, iterations=self.config.fill_iterations)
        new = settle(self.graph, self.current, cfg)
        return self._commit(new)

    def undo(self) -> Layout:
        """Restore the layout before the last operation; best snapshots keep."""
        if not self.history:
            raise EmptyHistory("nothing to undo")
        self.current = self.history.pop()
        self._report = metrics.report(self.graph, self.current)
        return self.current

    def save_state(self, name: str) -> None:
        self.saved[name] = self.current.copy()

    def load_state(self, name: str) -> Layout:
        if name not in self.saved:
            raise UnknownState(f"no saved state named {name!r}")
        return self._commit(self.saved[name].copy())

    def load_best(self, metric_name: str) -> Layout:
        if metric_name not in self.best:
            raise UnknownState(f"no best snapshot for {metric_name!r}")
        return self._commit(self.best[metric_name][1].copy())

    # -- force helpers -----------------------------------------------------

    def _resolve(self, layout: Layout, pinned: int = -1) -> None:
        passes = kernels.resolve_overlaps(
            layout.positions,
            layout.widths / 2,
            layout.heights / 2,
            self.force_config.overlap_tolerance,
            RESOLUTION_PASS_BUDGET,
            pinned,
        )
        if passes < 0:
            raise NonConvergence("overlap resolution exceeded pass budget")

    def _damped_phase(
        self,
        layout: Layout,
        anchors: np.ndarray,
        iterations: int,
        pinned: int,
        tree_edges: tuple[np.ndarray, np.ndarray, np.ndarray] | None,
        with_repulsion: bool,
    ) -> None:
        if iterations <= 0:
            return
        pos = layout.positions
        half_w = layout.widths / 2
        half_h = layout.heights / 2
        cap = STEP_CAP_HEIGHTS * float(np.mean(layout.heights))
        gain = self.force_config.attraction_gain
        anchor_gain = self.config.anchor_gain
        for t in range(iterations):
            alpha = 1.0 - t / iterations
            disp = (anchors - pos) * anchor_gain
            if tree_edges is not None:
                eu, ev, ew = tree_edges
                disp += kernels.attraction(pos, eu, ev, ew, gain, 0.0)
            if with_repulsion:
                disp += kernels.repulsion(pos, half_w, half_h)
            disp *= alpha
            norm = np.hypot(disp[:, 0], disp[:, 1])
            over = norm > cap
            if over.any():
                disp[over] *= (cap / norm[over])[:, None]
            disp[pinned] = 0.0
            pos += disp

    # -- persistence -------------------------------------------------------

    def export_state(self) -> dict:
        return {
            "graph": graph_to_dict(self.graph),
            "current": _layout_state(self.current),
            "saved": {name: _layout_state(lay) for name, lay in self.saved.items()},
            "best": {
                name: {"value": value, "layout": _layout_state(lay)}
                for name, (value, lay) in self.best.items()
            },
            "config": {
                "theta": self.config.theta,
                "anchor_gain": self.config.anchor_gain,
                "fill_iterations": self.config.fill_iterations,
                "neighbor_iterations": self.config.neighbor_iterations,
                "history_limit": self.config.history_limit,
                "rng_seed": self.config.rng_seed,
                "force": {
                    "iterations": self.force_config.iterations,
                    "attraction_gain": self.force_config.attraction_gain,
                    "centering_gain": self.force_config.centering_gain,
                    "overlap_tolerance": self.force_config.overlap_tolerance,
                    "rng_seed": self.force_config.rng_seed,
                },
            },
        }

    @classmethod
    def import_state(cls, data: dict) -> "EditSession":
        cfg = data["config"]
        force = cfg["force"]
        session = cls(
            graph=graph_from_dict(data["graph"]),
            layout=_layout_from_state(data["current"]),
            force_config=ForceConfig(
                iterations=force["iterations"],
                attraction_gain=force["attraction_gain"],
                centering_gain=force["centering_gain"],
                overlap_tolerance=force["overlap_tolerance"],
                rng_seed=force["rng_seed"],
            ),
            config=InteractionConfig(
                theta=cfg["theta"],
                anchor_gain=cfg["anchor_gain"],
                fill_iterations=cfg["fill_iterations"],
                neighbor_iterations=cfg["neighbor_iterations"],
                history_limit=cfg["history_limit"],
                rng_seed=cfg["rng_seed"],
            ),
        )
        session.saved = {
            name: _layout_from_state(state) for name, state in data["saved"].items()
        }
        session.best = {
            name: (entry["value"], _layout_from_state(entry["layout"]))
            for name, entry in data["best"].items()
        }
        return session


def _layout_state(layout: Layout) -> dict:
    # full float precision: exports must round-trip bit-identically
    return {
        "positions": layout.positions.tolist(),
        "widths": layout.widths.tolist(),
        "heights": layout.heights.tolist(),
    }


def _layout_from_state(state: dict) -> Layout:
    return Layout(
        positions=np.array(state["positions"], dtype=np.float64),
        widths=np.array(state["widths"], dtype=np.float64),
        heights=np.array(state["heights"], dtype=np.float64),
    )
