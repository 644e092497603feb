"""Command-line client over the same internals the service uses."""

from __future__ import annotations

import json
import sys
from dataclasses import replace
from pathlib import Path

import click

from .config import AppConfig, load_config
from .corpus import DatasetSplit, LabeledCorpus, load_corpus, save_corpus, stratified_split
from .errors import RegtrackError
from .ingest import MediaKind, RawContent, SourceRegistry, normalize
from .labels import Provenance, Task
from .service.api import CompositeFetcher, create_app
from .service.pipeline import run_pipeline
from .service.store import QueryFilter, Store
from .service.training import (
    TaskModels,
    evaluate_split,
    load_store_models,
    train_and_evaluate,
)
from .service.auth import Role, UserProfile


def _admin_user() -> UserProfile:
    # local CLI invocations act as an implicit admin
    return UserProfile(
        user_id="cli",
        display_name="CLI",
        role=Role.ADMIN,
        region_scopes=(),
        token_digest="",
    )


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None, help="Config file (TOML).")
@click.option("--store", "store_dir", type=click.Path(), default="store", help="Store directory.")
@click.option("--seed", type=int, default=0, help="Seed for any stochastic step.")
@click.pass_context
def main(ctx, config_path, store_dir, seed):
    """Track regulatory announcements: ingest, classify, triage, retrain."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = load_config(config_path)
    ctx.obj["store_dir"] = Path(store_dir)
    ctx.obj["seed"] = seed


def _open_store(ctx) -> Store:
    return Store(ctx.obj["store_dir"])


@main.command()
@click.option("--registry", "registry_path", type=click.Path(exists=True), default=None,
              help="Source registry JSONL (defaults to the config's).")
@click.option("--day", type=int, default=None, help="Replay day for fixture sources.")
@click.pass_context
def ingest(ctx, registry_path, day):
    """Poll all registered sources and store new or updated announcements."""
    config: AppConfig = ctx.obj["config"]
    if registry_path is None:
        resolved = config.resolve(config.ingest.registry)
        if resolved is None or not Path(resolved).exists():
            raise click.ClickException("no source registry given (use --registry or config)")
        registry_path = resolved
    if day is not None:
        config = replace(config, ingest=replace(config.ingest, day=day))
    store = _open_store(ctx)
    registry = SourceRegistry.load(registry_path)
    summary = run_pipeline(
        store,
        registry,
        CompositeFetcher(config),
        models=load_store_models(store),
        workers=config.ingest.workers,
    )
    click.echo(json.dumps(summary.to_json_dict(), indent=2))
    if summary.errors:
        sys.exit(1)


@main.command()
@click.option("--task", type=click.Choice([t.value for t in Task]), default="actionability")
@click.option("--sme", "sme_path", type=click.Path(exists=True), required=True)
@click.option("--historical", "historical_path", type=click.Path(exists=True), default=None)
@click.option("--fraction", type=float, default=0.3, help="SME fraction held out for test.")
@click.option("--out", "out_dir", type=click.Path(), default="splits")
@click.pass_context
def split(ctx, task, sme_path, historical_path, fraction, out_dir):
    """Stratified train/test split of labeled corpora."""
    task = Task(task)
    sme = load_corpus(sme_path, Provenance.SME)
    historical = (
        load_corpus(historical_path, Provenance.HISTORICAL)
        if historical_path
        else LabeledCorpus(provenance=Provenance.HISTORICAL, items=())
    )
    result = stratified_split(sme, historical, fraction, ctx.obj["seed"], task)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, part in (("train", result.train), ("test", result.test)):
        with open(out / f"{task.value}-{name}.jsonl", "w", encoding="utf-8") as fh:
            save_corpus(part, fh)
    click.echo(f"train={len(result.train)} test={len(result.test)} -> {out}/")


@main.command()
@click.option("--task", type=click.Choice([t.value for t in Task]), default="actionability")
@click.option("--algo", type=click.Choice(["lr", "nb"]), default="lr")
@click.option("--mode", type=click.Choice(["flat", "hierarchical", "hybrid"]),
              default="hierarchical")
@click.option("--historical", "historical_path", type=click.Path(exists=True), default=None,
              help="Extra historical training corpus (JSONL).")
@click.pass_context
def train(ctx, task, algo, mode, historical_path):
    """Train on the store's gold data; persist model, vocabulary, report."""
    config: AppConfig = ctx.obj["config"]
    task = Task(task)
    if task is Task.APPLICABILITY and mode == "hierarchical":
        mode = "flat"  # hierarchy only exists for actionability
    store = _open_store(ctx)
    historical = (
        load_corpus(historical_path, Provenance.HISTORICAL) if historical_path else None
    )
    try:
        report = train_and_evaluate(
            store,
            task,
            algo=algo,
            mode=mode,
            cfg=config.model,
            seed=ctx.obj["seed"],
            historical=historical,
        )
    except (ValueError, RegtrackError) as exc:
        raise click.ClickException(str(exc))
    click.echo(f"trained {task.value} ({algo}/{mode}); accuracy {report.accuracy_percent()}%")


@main.command()
@click.option("--task", type=click.Choice([t.value for t in Task]), default="actionability")
@click.option("--test", "test_path", type=click.Path(exists=True), default=None,
              help="Evaluate on an explicit labeled JSONL instead of the stored report.")
@click.pass_context
def evaluate(ctx, task, test_path):
    """Print the latest evaluation report as a result table."""
    from .evaluation import load_report

    task = Task(task)
    store = _open_store(ctx)
    if test_path is not None:
        bundle = TaskModels.load_from_store(store, task)
        if bundle is None:
            raise click.ClickException(f"no trained {task.value} model in the store")
        corpus = load_corpus(test_path, Provenance.SME)
        report = evaluate_split(bundle, DatasetSplit(train=(), test=corpus.items))
    else:
        path = store.report_path(task)
        if not path.exists():
            raise click.ClickException(f"no stored report for {task.value}; run train first")
        report = load_report(path)
    click.echo(report.render_table())


@main.command()
@click.argument("file", type=click.Path(exists=True))
@click.pass_context
def classify(ctx, file):
    """Classify one document file (html, pdf, or plain text)."""
    store = _open_store(ctx)
    models = load_store_models(store)
    if not models:
        raise click.ClickException("no trained models in the store; run train first")
    path = Path(file)
    kind = {".html": MediaKind.HTML, ".htm": MediaKind.HTML, ".pdf": MediaKind.PDF}.get(
        path.suffix.lower(), MediaKind.PLAIN_TEXT
    )
    try:
        text = normalize(RawContent(path.read_bytes(), kind), url=str(path))
    except RegtrackError as exc:
        raise click.ClickException(str(exc))
    result = {}
    for task, bundle in models.items():
        label, info = bundle.predict_text(text)
        result[task.value] = {"label": label.value, **info}
    click.echo(json.dumps(result, indent=2))


@main.command()
@click.pass_context
def serve(ctx):
    """Run the REST API (and dashboard, when static assets are configured)."""
    import uvicorn

    config: AppConfig = ctx.obj["config"]
    store = _open_store(ctx)
    app = create_app(store, config)
    uvicorn.run(app, host=config.server.bind, port=config.server.port, log_level="warning")


@main.command()
@click.option("--out", "out_path", type=click.Path(), default="-", help="CSV output path.")
@click.option("--region", default=None)
@click.option("--actionability", default=None)
@click.option("--applicability", default=None)
@click.option("--q", default=None)
@click.pass_context
def export(ctx, out_path, region, actionability, applicability, q):
    """Export the store (or a filtered view) as CSV."""
    from .labels import ActionabilityLabel, ApplicabilityLabel, parse_label

    store = _open_store(ctx)
    flt = QueryFilter(
        region=region,
        actionability=parse_label(ActionabilityLabel, actionability) if actionability else None,
        applicability=parse_label(ApplicabilityLabel, applicability) if applicability else None,
        text_query=q,
    )
    payload = store.export_csv(flt, _admin_user())
    if out_path == "-":
        click.echo(payload, nl=False)
    else:
        Path(out_path).write_text(payload, encoding="utf-8")
        click.echo(f"wrote {out_path}")


if __name__ == "__main__":
    main()
