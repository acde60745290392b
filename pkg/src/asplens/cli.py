"""Command line front end.

Exit codes: 0 success (possibly with warnings on standard error),
1 input rejected (parse errors, unknown constraint type, empty graph),
2 usage or I/O failure.
"""

import os
import sys
from pathlib import Path

import click

from .features import FEATURE_KINDS, extract_features
from .hypergraph import build_hypergraph
from .layout import EmptyGraph, compute_layout, layout_to_json, render_svg
from .model import model_from_json, model_to_json
from .parser import ast_to_json, parse_program
from .scoring import evaluate_spec, facts_from_source, rank_specs, reports_to_json
from .workspace import (
    DEFAULT_MIN_DEGREE,
    build_constraint_set,
    load_workspace,
    parse_feature_tokens,
)

DEFAULT_PORT = 8080


def _echo_diagnostics(diagnostics) -> None:
    for d in diagnostics:
        click.echo(d.format(), err=True)


def _write(out_path: str | None, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out_path is None or out_path == "-":
        click.echo(text, nl=False)
    else:
        Path(out_path).write_text(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)


@click.group()
def main() -> None:
    """Parse, model, lay out, and evaluate an ASP knowledge base."""


@main.command("parse")
@click.argument("kb_path")
@click.option("-o", "--out", "out_path", default=None, help="Output file (default stdout).")
def cmd_parse(kb_path: str, out_path: str | None) -> None:
    """Parse a knowledge base file and write its AST as JSON."""
    text = _read(kb_path)
    program = parse_program(text, source_name=Path(kb_path).name)
    _echo_diagnostics(program.diagnostics)
    if program.error_diagnostics:
        sys.exit(1)
    try:
        _write(out_path, ast_to_json(program))
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)


@main.command("model")
@click.argument("kb_path")
@click.argument("weights_path", required=False, default=None)
@click.option("-o", "--out", "out_path", default=None, help="Output file (default stdout).")
def cmd_model(kb_path: str, weights_path: str | None, out_path: str | None) -> None:
    """Extract constraints, weights, and hierarchy; write model JSON."""
    _read(kb_path)
    if weights_path is not None:
        _read(weights_path)
    cset = build_constraint_set(
        Path(kb_path), Path(weights_path) if weights_path else None
    )
    _echo_diagnostics(cset.diagnostics)
    if any(d.severity in ("error", "lex") for d in cset.diagnostics):
        sys.exit(1)
    try:
        _write(out_path, model_to_json(cset))
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)
    features = {i.feature.key for i in extract_features(cset)}
    click.echo(f"soft={len(cset.soft)} hard={len(cset.hard)} features={len(features)}")


@main.command("layout")
@click.argument("model_path")
@click.option("--type", "kind", default="soft", help="Constraint type: hard or soft.")
@click.option("--features", "features", default="predicates,variables",
              help="Feature kinds, comma separated.")
@click.option("--min-degree", "min_degree", default=DEFAULT_MIN_DEGREE, type=int,
              help="Drop features shared by fewer constraints.")
@click.option("--out", "format", default="json",
              type=click.Choice(["json", "svg"]), help="Output format.")
@click.option("-o", "--out-file", "out_path", default=None, help="Output file (default stdout).")
def cmd_layout(model_path: str, kind: str, features: str, min_degree: int,
               format: str, out_path: str | None) -> None:
    """Compute the radial layout of a model; write JSON or SVG."""
    cset = model_from_json(_read(model_path))
    try:
        feature_kinds = parse_feature_tokens(features)
    except ValueError as e:
        raise click.UsageError(str(e))
    if kind not in ("hard", "soft"):
        raise click.UsageError("--type must be hard or soft")
    if min_degree < 0:
        raise click.UsageError("--min-degree must be non-negative")
    incidences = extract_features(cset, feature_kinds)
    graph = build_hypergraph(cset, incidences, kind, feature_kinds, min_degree)
    try:
        layout = compute_layout(graph, cset.hierarchy)
    except EmptyGraph as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    try:
        _write(out_path, render_svg(layout) if format == "svg" else layout_to_json(layout))
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)


@main.command("eval")
@click.argument("model_path")
@click.argument("specs_dir")
@click.option("-o", "--out", "out_path", default=None, help="Output file (default stdout).")
def cmd_eval(model_path: str, specs_dir: str, out_path: str | None) -> None:
    """Evaluate every .lp fact file in a directory; write ranked reports."""
    cset = model_from_json(_read(model_path))
    directory = Path(specs_dir)
    if not directory.is_dir():
        click.echo(f"error: not a directory: {specs_dir}", err=True)
        sys.exit(2)
    reports = []
    for path in sorted(directory.iterdir()):
        if path.suffix != ".lp" or not path.is_file():
            continue
        facts = facts_from_source(_read(str(path)), name=path.stem)
        _echo_diagnostics(facts.diagnostics)
        reports.append(evaluate_spec(cset, facts))
    try:
        _write(out_path, reports_to_json(rank_specs(reports)))
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)


@main.command("serve")
@click.argument("kb_path")
@click.argument("weights_path", required=False, default=None)
@click.option("--specs", "specs_dir", default=None, help="Directory of candidate spec fact files.")
@click.option("--port", default=None, type=int,
              help="Port (default from ASPLENS_PORT, else 8080).")
@click.option("--host", default="127.0.0.1", help="Bind address.")
def cmd_serve(kb_path: str, weights_path: str | None, specs_dir: str | None,
              port: int | None, host: str) -> None:
    """Serve the model, layouts, and reports over a read-only HTTP API."""
    import uvicorn

    from .service import create_app

    _read(kb_path)
    if weights_path is not None:
        _read(weights_path)
    workspace = load_workspace(kb_path, weights_path, specs_dir)
    if any(d.severity in ("error", "lex") for d in workspace.cset.diagnostics):
        _echo_diagnostics(workspace.cset.diagnostics)
        sys.exit(1)
    if port is None:
        port = int(os.environ.get("ASPLENS_PORT", DEFAULT_PORT))
    uvicorn.run(create_app(workspace), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
