"""Compare the compiled and pure-numpy force kernels on a realistic workload.

Usage: python benchmarks/bench_kernels.py [--words N] [--repeats R]
"""

from __future__ import annotations

import argparse
import importlib
import time
from pathlib import Path

import numpy as np

from semcloud.graph import build_graph
from semcloud.layout import (
    ForceConfig,
    _edge_arrays,
    _force_weights,
    mds_initialize,
)
from semcloud.textpipe import build_terms

FIXTURE = Path(__file__).parent.parent / "tests" / "fixtures" / "astronomy.txt"


def _workload(words: int):
    text = FIXTURE.read_text("utf-8")
    terms, index = build_terms(text, k=words)
    graph = build_graph(terms, index)
    layout = mds_initialize(graph, seed=0)
    eu, ev, _ = _edge_arrays(graph)
    ew = _force_weights(graph)
    return graph, layout, eu, ev, ew


def _bench(kernel_mod, layout, eu, ev, ew, config: ForceConfig, repeats: int):
    times = []
    for _ in range(repeats):
        pos = np.ascontiguousarray(layout.positions.copy())
        half_w = layout.widths / 2
        half_h = layout.heights / 2
        cap = 0.5 * float(np.mean(layout.heights))
        start = time.perf_counter()
        kernel_mod.settle_loop(
            pos, half_w, half_h, eu, ev, ew,
            config.iterations, config.attraction_gain, config.centering_gain, cap,
        )
        passes = kernel_mod.resolve_overlaps(
            pos, half_w, half_h, config.overlap_tolerance, 200, -1
        )
        times.append(time.perf_counter() - start)
        assert passes >= 0, "resolution budget exhausted"
    return min(times), sum(times) / len(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--words", type=int, default=50)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    graph, layout, eu, ev, ew = _workload(args.words)
    config = ForceConfig()
    print(
        f"workload: {graph.n} words, {len(graph.edges)} edges, "
        f"{config.iterations} iterations, {args.repeats} repeats"
    )

    results = {}
    for name, module in (
        ("compiled", "semcloud.kernels._core"),
        ("python", "semcloud.kernels._ref"),
    ):
        try:
            mod = importlib.import_module(module)
        except ImportError:
            print(f"{name:>9}: unavailable")
            continue
        best, mean = _bench(mod, layout, eu, ev, ew, config, args.repeats)
        results[name] = best
        print(f"{name:>9}: best {best * 1000:8.2f} ms   mean {mean * 1000:8.2f} ms")

    if len(results) == 2:
        print(f"  speedup: {results['python'] / results['compiled']:.1f}x")


if __name__ == "__main__":
    main()
