"""Batch CLI: generate layouts, score layouts, export SVG/JSON, run the service.

Exit codes: 0 success, 1 data error, 2 usage error. One JSON object per
stdout line; human-readable summaries go to stderr with --verbose.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import metrics
from .errors import SemcloudError
from .graph import graph_from_dict, graph_to_dict
from .layout import layout_from_dict, layout_to_dict, layout_to_svg
from .pipeline import create_cloud
from .textpipe import DEFAULT_K


def _positive_k(ctx, param, value):
    if value < 1:
        raise click.BadParameter("k must be >= 1")
    return value


@click.group()
def main() -> None:
    """Semantic word cloud engine."""


@main.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--k", default=DEFAULT_K, show_default=True, callback=_positive_k)
@click.option("--sigma", default=0.0, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option(
    "--out",
    "out_format",
    type=click.Choice(["json", "svg", "both"]),
    default="json",
    show_default=True,
)
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path), default=None)
@click.option("--boxes/--no-boxes", default=False, help="include box outlines in SVG")
@click.option("--verbose", is_flag=True)
def generate(
    input_path: Path,
    k: int,
    sigma: float,
    seed: int,
    out_format: str,
    out_dir: Path | None,
    boxes: bool,
    verbose: bool,
) -> None:
    """Generate a layout from a text file; print its metric report."""
    if not 0.0 <= sigma < 1.0:
        raise click.BadParameter("sigma must be in [0, 1)")
    try:
        text = input_path.read_text("utf-8")
        result = create_cloud(text, k=k, sigma=sigma, seed=seed)
    except (OSError, SemcloudError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)

    target = out_dir or input_path.parent
    target.mkdir(parents=True, exist_ok=True)
    stem = input_path.stem
    try:
        if out_format in ("json", "both"):
            (target / f"{stem}.layout.json").write_text(
                json.dumps(layout_to_dict(result.graph, result.layout)), "utf-8"
            )
            (target / f"{stem}.graph.json").write_text(
                json.dumps(graph_to_dict(result.graph)), "utf-8"
            )
        if out_format in ("svg", "both"):
            (target / f"{stem}.svg").write_text(
                layout_to_svg(result.graph, result.layout, with_boxes=boxes), "utf-8"
            )
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)

    click.echo(json.dumps(result.report.to_dict()))
    if verbose:
        r = result.report
        click.echo(
            f"{len(result.graph.terms)} terms, {len(result.graph.edges)} edges | "
            f"ra={r.realized_adjacencies:.4f} distortion={r.distortion:.4f} "
            f"compactness={r.compactness:.4f}",
            err=True,
        )


@main.command()
@click.argument("layout_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("graph_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
def score(layout_path: Path, graph_path: Path) -> None:
    """Score an externally produced layout against its similarity graph."""
    try:
        layout_data = json.loads(layout_path.read_text("utf-8"))
        graph_data = json.loads(graph_path.read_text("utf-8"))
        graph = graph_from_dict(graph_data)
        layout = layout_from_dict(layout_data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        click.echo(f"error: cannot parse inputs: {exc}", err=True)
        sys.exit(1)

    layout_ids = {t["id"] for t in layout_data["terms"]}
    graph_ids = set(range(graph.n))
    if layout_ids != graph_ids:
        click.echo(
            f"error: layout term ids {sorted(layout_ids)} do not match "
            f"graph vertices {sorted(graph_ids)}",
            err=True,
        )
        sys.exit(1)

    click.echo(json.dumps(metrics.report(graph, layout).to_dict()))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=None, type=int, help="defaults to SEMCLOUD_PORT or 8000")
def serve(host: str, port: int | None) -> None:
    """Run the HTTP service."""
    import os

    import uvicorn

    from .service import app

    if port is None:
        port = int(os.environ.get("SEMCLOUD_PORT", "8000"))
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
