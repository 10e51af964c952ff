"""Command-line interface over the workspace operations.

Exit codes: 0 on success, 1 on a domain error (machine-readable JSON on
stderr), 2 on a usage error. All outputs are JSON; ``--format text``
renders human-readable summaries where one exists.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import ops
from .errors import AddressInUse, DomainError
from .scm_engine import InvalidScm
from .workspace import Workspace, WorkspaceConfig


def _workspace(ctx: click.Context) -> Workspace:
    return Workspace(ctx.obj["config"])


def _emit(ctx: click.Context, payload: dict, text: str | None = None) -> None:
    if ctx.obj["format"] == "text" and text is not None:
        click.echo(text)
    else:
        click.echo(ops.render_json(payload))


def _run(ctx: click.Context, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (DomainError, InvalidScm) as exc:
        if isinstance(exc, DomainError):
            payload = exc.payload()
        else:
            payload = {"code": "INVALID_SCM", "message": str(exc)}
        click.echo(ops.render_json({"error": payload}), err=True)
        sys.exit(1)


def _parse_assignment(text: str | None) -> dict:
    out: dict[str, str] = {}
    if not text:
        return out
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise click.UsageError(f"expected var=value, got {part!r}")
        var, value = part.split("=", 1)
        out[var.strip()] = value.strip()
    return out


def _load_scm_file(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read SCM file {path}: {exc}") from exc


@click.group()
@click.option("--store", "store_path", default="workspace.nq", show_default=True,
              help="N-Quads store file backing the workspace.")
@click.option("--shapes-dir", default=None, type=click.Path(), help="Directory of shape JSON files.")
@click.option("--deterministic/--random-ids", "deterministic", default=False,
              help="Mint content-hash identifiers for reproducible output.")
@click.option("--max-adjustment-size", default=4, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.pass_context
def main(ctx, store_path, shapes_dir, deterministic, max_adjustment_size, fmt):
    """Semantic-unit store with causal identification and estimation."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = WorkspaceConfig(
        store_path=Path(store_path),
        shapes_dir=Path(shapes_dir) if shapes_dir else None,
        deterministic_ids=deterministic,
        max_adjustment_size=max_adjustment_size,
    )
    ctx.obj["format"] = fmt


@main.command()
@click.argument("path", type=click.Path(exists=True))
@click.pass_context
def ingest(ctx, path):
    """Load an N-Quads file into the store."""
    ws = _workspace(ctx)
    text = Path(path).read_text(encoding="utf-8")
    payload = _run(ctx, ops.ingest, ws, text)
    _emit(ctx, payload, text=f"ingested {payload['ingested']} quads ({payload['quads']} total)")


@main.command()
@click.argument("unit", required=False)
@click.option("--all", "check_all", is_flag=True, help="Validate every statement unit.")
@click.option("--shape", default=None, help="Shape id to validate against.")
@click.pass_context
def validate(ctx, unit, check_all, shape):
    """Validate units against their shapes."""
    if unit is None and not check_all:
        raise click.UsageError("give a unit id or --all")
    ws = _workspace(ctx)
    payload = _run(ctx, ops.validate, ws, unit_id=unit, shape_id=shape)
    lines = [
        f"{r['unit']}: " + ("no shape" if r["conformant"] is None else ("ok" if r["conformant"] else "FAIL"))
        for r in payload["reports"]
    ]
    _emit(ctx, payload, text="\n".join(lines) or "nothing to validate")


@main.command()
@click.option("--from", "source", required=True, type=click.Path(exists=True),
              help="JSON file with a statements list to mint.")
@click.pass_context
def compose(ctx, source):
    """Mint universal correlation/causal statement units from a file."""
    ws = _workspace(ctx)
    spec = json.loads(Path(source).read_text(encoding="utf-8"))
    payload = _run(ctx, ops.compose, ws, spec)
    _emit(ctx, payload, text="\n".join(payload["units"]))


@main.group(name="map")
def map_group():
    """Causal map operations."""


@map_group.command(name="build")
@click.pass_context
def map_build(ctx):
    """Compose all universal correlation/causal units into a causal map."""
    ws = _workspace(ctx)
    payload = _run(ctx, ops.map_build, ws)
    _emit(ctx, payload, text=f"map {payload['id']}: {len(payload['nodes'])} nodes, "
                             f"{len(payload['edges'])} edges, {payload['junction_count']} junctions")


@main.command()
@click.option("--map", "map_id", required=True)
@click.pass_context
def junctions(ctx, map_id):
    """Classify chain/fork/collider junctions of a map."""
    ws = _workspace(ctx)
    payload = _run(ctx, ops.junctions, ws, map_id)
    lines = [
        f"{j['kind'].lower()}: {j['v1']} / {j['v2']} / {j['v3']}" for j in payload["junctions"]
    ]
    _emit(ctx, payload, text="\n".join(lines) or "no junctions")


@main.command()
@click.option("--map", "map_id", required=True)
@click.option("--cause", required=True)
@click.option("--effect", required=True)
@click.option("--context", default=None,
              help="Comma-separated predicate=value annotations required on member statements.")
@click.pass_context
def perspective(ctx, map_id, cause, effect, context):
    """Extract the focus-pair perspective subnetwork."""
    ws = _workspace(ctx)
    payload = _run(
        ctx, ops.perspective, ws, map_id, cause, effect, context=_parse_assignment(context) or None
    )
    _emit(ctx, payload)


@main.command()
@click.option("--map", "map_id", required=True)
@click.option("--x", required=True)
@click.option("--y", required=True)
@click.option("--given", default="", help="Comma-separated conditioning variables.")
@click.pass_context
def dsep(ctx, map_id, x, y, given):
    """d-separation test between two map variables."""
    ws = _workspace(ctx)
    names = [part.strip() for part in given.split(",") if part.strip()]
    payload = _run(ctx, ops.dsep, ws, map_id, x, y, names)
    _emit(ctx, payload, text=f"d-separated: {payload['d_separated']}")


@main.command()
@click.option("--map", "map_id", required=True)
@click.option("--cause", required=True)
@click.option("--effect", required=True)
@click.pass_context
def identify(ctx, map_id, cause, effect):
    """Identify the interventional effect as an observational estimand."""
    ws = _workspace(ctx)
    payload = _run(ctx, ops.identify, ws, map_id, cause, effect)
    _emit(ctx, payload, text=f"[{payload['strategy']}] {payload['estimand']}")


@main.command()
@click.argument("method", type=click.Choice(["backdoor", "frontdoor"]))
@click.option("--scm", "scm_path", required=True, type=click.Path(exists=True))
@click.option("--cause", required=True)
@click.option("--effect", required=True)
@click.option("--given", default=None, help="Comma-separated adjustment variables (backdoor).")
@click.option("--mediators", default=None, help="Comma-separated mediator variables (frontdoor).")
@click.pass_context
def estimate(ctx, method, scm_path, cause, effect, given, mediators):
    """Numeric back-door / front-door estimation on an SCM file."""
    ws = _workspace(ctx)
    given_list = [p.strip() for p in given.split(",") if p.strip()] if given else None
    mediator_list = [p.strip() for p in mediators.split(",") if p.strip()] if mediators else None
    payload = _run(
        ctx, ops.estimate, ws, method, _load_scm_file(scm_path), cause, effect,
        given=given_list, mediators=mediator_list,
    )
    _emit(ctx, payload)


@main.command()
@click.option("--scm", "scm_path", required=True, type=click.Path(exists=True))
@click.option("--cause", required=True)
@click.option("--mediator", required=True)
@click.option("--effect", required=True)
@click.option("--baseline", default="0", show_default=True)
@click.option("--treated", default="1", show_default=True)
@click.pass_context
def mediate(ctx, scm_path, cause, mediator, effect, baseline, treated):
    """Natural direct/indirect/total effects through a mediator."""
    ws = _workspace(ctx)
    payload = _run(
        ctx, ops.mediate, ws, _load_scm_file(scm_path), cause, mediator, effect, baseline, treated
    )
    _emit(ctx, payload, text=f"TE={payload['te']} NDE={payload['nde']} NIE={payload['nie']}")


@main.command()
@click.option("--scm", "scm_path", required=True, type=click.Path(exists=True))
@click.option("--observe", default="", help="Comma-separated var=value evidence.")
@click.option("--do", "do_assign", default="", help="Comma-separated var=value interventions.")
@click.option("--query", required=True)
@click.pass_context
def whatif(ctx, scm_path, observe, do_assign, query):
    """Counterfactual query: abduction, action, prediction."""
    ws = _workspace(ctx)
    payload = _run(
        ctx, ops.whatif, ws, _load_scm_file(scm_path),
        _parse_assignment(observe), _parse_assignment(do_assign), query,
    )
    _emit(ctx, payload)


@main.command(name="export-nanopub")
@click.argument("unit")
@click.option("--out", default=None, type=click.Path(), help="Write the bundle N-Quads here.")
@click.option("--doi-prefix", default=None, help="Namespace minted nanopub ids under this prefix.")
@click.pass_context
def export_nanopub(ctx, unit, out, doi_prefix):
    """Export a unit (recursively for compounds) as nanopublication FDOs."""
    ws = _workspace(ctx)
    payload = _run(ctx, ops.export_unit_nanopub, ws, unit, doi_prefix=doi_prefix)
    if out:
        Path(out).write_text(payload["nquads"], encoding="utf-8")
        index = {"unit": payload["unit"], "nanopubs": payload["nanopubs"]}
        Path(out).with_suffix(".index.json").write_text(
            ops.render_json(index) + "\n", encoding="utf-8"
        )
    _emit(ctx, payload, text="\n".join(payload["nanopubs"]))


@main.command()
@click.option("--listen", default=None, help="host:port to bind (default 127.0.0.1:8349).")
@click.option("--ui-dir", default=None, type=click.Path(), help="Static explorer UI directory.")
@click.pass_context
def serve(ctx, listen, ui_dir):
    """Run the HTTP/JSON service."""
    import uvicorn

    from .service import create_app

    config: WorkspaceConfig = ctx.obj["config"]
    if listen:
        config.listen_addr = listen
    if ui_dir:
        config.ui_dir = Path(ui_dir)
    ws = Workspace(config)
    app = create_app(ws)
    host, _, port = config.listen_addr.partition(":")
    try:
        uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8349), log_level="warning")
    except OSError as exc:
        raise AddressInUse(f"cannot bind {config.listen_addr}: {exc}") from exc


if __name__ == "__main__":
    main()
