"""Frozen end-to-end regression: the full pipeline must keep reproducing the
golden layout for the active kernel backend. Goldens are per backend because
float summation order differs between the compiled and numpy paths."""

import json

import pytest

from conftest import FIXTURES, GOLDEN
from semcloud.kernels import BACKEND
from semcloud.layout import layout_to_dict
from semcloud.pipeline import create_cloud


def test_golden_layout_reproduced():
    path = GOLDEN / f"astronomy_k50_seed0.{BACKEND}.json"
    if not path.exists():
        pytest.skip(f"no golden for backend {BACKEND!r}")
    golden = json.loads(path.read_text("utf-8"))
    assert golden["backend"] == BACKEND

    text = (FIXTURES / "astronomy.txt").read_text("utf-8")
    result = create_cloud(text, k=50, seed=0)
    assert layout_to_dict(result.graph, result.layout) == golden["layout"]
    assert result.report.to_dict() == golden["metrics"]
