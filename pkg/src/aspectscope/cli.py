"""Command-line pipeline driver and scripting interface.

Conventions: machine-readable JSON on stdout, logs on stderr; exit code
0 on success, 1 for an empty result under --fail-empty, 2 on errors.
``query`` output is byte-identical to the corresponding API response
body (no trailing newline).
"""

from __future__ import annotations

import json
import logging
import signal
import sys
from pathlib import Path

import click

from .aspect import AspectArtifact, read_labeled_jsonl
from .corpus import ParseCounters, build_snapshot, parse_metadata
from .errors import AspectScopeError
from .linker import build_gazetteer, read_concepts_jsonl, read_concepts_tsv
from .pipeline import MANIFEST_NAME, train_all, train_aspect_from_labeled
from .service import build_state, create_app, dump_json, load_config
from .service.views import (
    recommend_payload,
    search_payload,
    topic_papers_payload,
    topics_payload,
)

logger = logging.getLogger("aspectscope.cli")

ASPECT_MODEL_NAME = "aspect.model"
_SCOPES = ("background", "purpose", "method", "finding", "whole")


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _fail(message: str) -> "click.exceptions.Exit":
    logger.error(message)
    return click.exceptions.Exit(2)


@click.group()
@click.option("--verbose", is_flag=True, help="Debug-level logs on stderr.")
def main(verbose: bool) -> None:
    """Corpus exploration pipeline: ingest, train, link, serve, query."""
    _setup_logging(verbose)


@main.command()
@click.option("--metadata", required=True, type=click.Path(), help="Metadata CSV file.")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Snapshot artifact to write.")
@click.option("--case-insensitive-covid", is_flag=True, help="Match the covid keyword case-insensitively.")
@click.option("--import-labels", type=click.Path(), default=None, help="JSONL sentence labels to carry in the snapshot.")
def ingest(metadata: str, out_path: str, case_insensitive_covid: bool, import_labels: str | None) -> None:
    """Parse a metadata CSV into a corpus snapshot artifact."""
    try:
        counters = ParseCounters()
        records = parse_metadata(metadata, counters=counters)
        imported = ()
        if import_labels is not None:
            imported = tuple(
                (item.paper_id, item.sentence_index, item.label)
                for item in read_labeled_jsonl(import_labels)
            )
        snapshot = build_snapshot(
            records,
            case_insensitive_covid=case_insensitive_covid,
            counters=counters,
            imported_labels=imported,
        )
        digest = snapshot.save(out_path)
    except AspectScopeError as exc:
        raise _fail(f"ingest failed: {exc}") from exc
    if len(snapshot) == 0:
        logger.warning("snapshot contains no documents")
    covid_count = sum(1 for d in snapshot.docs if d.record.is_covid)
    report = dict(counters.as_dict())
    report.update(
        {
            "documents": len(snapshot),
            "covid": covid_count,
            "corpus_id": snapshot.corpus_id,
            "hash": digest,
        }
    )
    click.echo(json.dumps(report))


@main.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(), help="Corpus snapshot artifact.")
@click.option("--out-dir", required=True, type=click.Path(), help="Directory for model bundles and the manifest.")
@click.option("--aspect-labels", type=click.Path(), default=None, help="Labeled sentences (JSONL) to train the classifier.")
@click.option("--iterations", default=None, type=int, help="Gibbs sweeps per model (default 15).")
@click.option("--seed", default=0, type=int, show_default=True)
@click.option("--alpha", default=None, type=float, help="Document-topic prior (default 0.1).")
@click.option("--beta", default=None, type=float, help="Topic-word prior (default 0.01).")
def train(
    snapshot_path: str,
    out_dir: str,
    aspect_labels: str | None,
    iterations: int | None,
    seed: int,
    alpha: float | None,
    beta: float | None,
) -> None:
    """Train the classifier (if labels given) and all ten topic model slots."""
    from .corpus import CorpusSnapshot
    from .topics import DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_ITERATIONS

    out = Path(out_dir)
    aspect_path = out / ASPECT_MODEL_NAME
    written_aspect = False
    try:
        snapshot = CorpusSnapshot.load(snapshot_path)
        artifact = None
        if aspect_labels is not None:
            labeled = read_labeled_jsonl(aspect_labels)
            model = train_aspect_from_labeled(snapshot, labeled, seed=seed)
            artifact = AspectArtifact(model=model)
            out.mkdir(parents=True, exist_ok=True)
            artifact.save(aspect_path)
            written_aspect = True
            logger.info("aspect classifier trained on %d sentences", len(labeled))
        elif snapshot.imported_labels:
            artifact = AspectArtifact(model=None)

        manifest = train_all(
            snapshot,
            artifact,
            out,
            iterations=iterations if iterations is not None else DEFAULT_ITERATIONS,
            seed=seed,
            alpha=alpha if alpha is not None else DEFAULT_ALPHA,
            beta=beta if beta is not None else DEFAULT_BETA,
        )
    except AspectScopeError as exc:
        if written_aspect:
            aspect_path.unlink(missing_ok=True)
        (out / MANIFEST_NAME).unlink(missing_ok=True)
        raise _fail(f"train failed: {exc}") from exc
    click.echo(json.dumps(manifest, indent=2, sort_keys=True))


@main.command()
@click.option("--dictionary", required=True, type=click.Path(), help="Concept dictionary (JSONL or TSV).")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Gazetteer artifact to write.")
@click.option("--format", "fmt", type=click.Choice(["jsonl", "tsv"]), default=None, help="Defaults from the file extension.")
def gazetteer(dictionary: str, out_path: str, fmt: str | None) -> None:
    """Compile a concept dictionary into a gazetteer artifact."""
    try:
        if fmt is None:
            fmt = "tsv" if dictionary.endswith((".tsv", ".tab")) else "jsonl"
        reader = read_concepts_tsv if fmt == "tsv" else read_concepts_jsonl
        concepts = reader(dictionary)
        compiled = build_gazetteer(concepts)
        digest = compiled.save(out_path)
    except (AspectScopeError, ValueError) as exc:
        raise _fail(f"gazetteer build failed: {exc}") from exc
    click.echo(
        json.dumps(
            {
                "concepts": len(compiled),
                "forms": len(compiled.form_to_cui),
                "hash": digest,
            }
        )
    )


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(), help="Service config file.")
def serve(config_path: str) -> None:
    """Load artifacts and serve the HTTP API; SIGHUP reloads them."""
    import uvicorn

    try:
        config = load_config(config_path)
        app = create_app(config)
    except AspectScopeError as exc:
        raise _fail(f"cannot start service: {exc}") from exc

    def _reload(signum, frame):
        try:
            app.state.holder.swap(build_state(config))
            logger.info("artifacts reloaded")
        except AspectScopeError as exc:
            logger.error("reload failed, keeping current artifacts: %s", exc)

    signal.signal(signal.SIGHUP, _reload)
    uvicorn.run(app, host=config.host, port=config.port, log_config=None)


def _load_state(config_path: str | None):
    config = load_config(config_path)
    return config, build_state(config)


def _emit(payload: dict, fail_empty: bool, list_key: str) -> None:
    sys.stdout.buffer.write(dump_json(payload))
    sys.stdout.buffer.flush()
    if fail_empty and not payload.get(list_key):
        raise click.exceptions.Exit(1)


def _query_options(fn):
    fn = click.option("--config", "config_path", type=click.Path(), default=None,
                      help="Service config file (env vars also apply).")(fn)
    fn = click.option("--scope", type=click.Choice(_SCOPES), default="whole", show_default=True)(fn)
    fn = click.option("--covid", is_flag=True, help="Restrict to the covid-only slot.")(fn)
    fn = click.option("--fail-empty", is_flag=True, help="Exit 1 when the result list is empty.")(fn)
    return fn


@main.group()
def query() -> None:
    """Ad-hoc queries printing exactly the API response bodies."""


@query.command("topics")
@_query_options
@click.option("--filter", "keyword_filter", default=None, help="Keep topics whose top words contain every term.")
@click.option("--limit", default=20, show_default=True, type=int)
@click.option("--offset", default=0, type=int)
def query_topics(config_path, scope, covid, fail_empty, keyword_filter, limit, offset):
    """List topics for one model slot."""
    try:
        _, state = _load_state(config_path)
        payload = topics_payload(state, scope, covid, keyword_filter, limit, offset)
    except AspectScopeError as exc:
        raise _fail(str(exc)) from exc
    _emit(payload, fail_empty, "topics")


@query.command("papers")
@_query_options
@click.option("--topic", "topic_id", required=True, type=int)
@click.option("--order", type=click.Choice(["score", "date"]), default="score", show_default=True)
@click.option("--limit", default=20, show_default=True, type=int)
@click.option("--offset", default=0, type=int)
def query_papers(config_path, scope, covid, fail_empty, topic_id, order, limit, offset):
    """Rank the papers belonging to one topic."""
    try:
        config, state = _load_state(config_path)
        payload = topic_papers_payload(
            state, scope, covid, topic_id, order, limit, offset,
            membership_threshold=config.membership_threshold,
        )
    except AspectScopeError as exc:
        raise _fail(str(exc)) from exc
    _emit(payload, fail_empty, "papers")


@query.command("recommend")
@_query_options
@click.option("--text", required=True, help="Query text to match against the corpus.")
@click.option("--k", default=10, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
def query_recommend(config_path, scope, covid, fail_empty, text, k, seed):
    """Papers nearest to the query text in topic space."""
    try:
        _, state = _load_state(config_path)
        payload = recommend_payload(state, text, scope, covid, k, seed)
    except AspectScopeError as exc:
        raise _fail(str(exc)) from exc
    _emit(payload, fail_empty, "papers")


@query.command("search")
@_query_options
@click.option("--q", "q", required=True, help="Whole-word query terms.")
@click.option("--match", type=click.Choice(["all", "any"]), default="all", show_default=True)
@click.option("--limit", default=20, show_default=True, type=int)
@click.option("--offset", default=0, type=int)
def query_search(config_path, scope, covid, fail_empty, q, match, limit, offset):
    """Keyword search over abstracts or aspect segments."""
    try:
        _, state = _load_state(config_path)
        payload = search_payload(state, q, scope, covid, match == "any", limit, offset)
    except AspectScopeError as exc:
        raise _fail(str(exc)) from exc
    _emit(payload, fail_empty, "papers")


if __name__ == "__main__":
    main()
