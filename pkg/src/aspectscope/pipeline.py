"""End-to-end training pipeline: labels -> slot corpora -> models.

Ten model slots exist: five aspects (background, purpose, method,
finding, whole) crossed with two scopes (all papers, covid-only). Each
slot gets its own vocabulary, LDA model, KNN index, and cached 2D
projection, persisted as one bundle file plus a manifest.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import store
from .aspect import AspectArtifact, AspectModel, LabeledSentence, canonical_label, classify_sentence, train_aspect
from .corpus import CorpusSnapshot, tokenize
from .errors import IngestionError, TrainingError
from .project import MIN_POINTS, ProjectedPoint, ProjectionConfig, project
from .recommend import KnnIndex, build_index
from .topics import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    DEFAULT_ITERATIONS,
    LdaConfig,
    LdaModel,
    VocabularyConfig,
    build_vocabulary,
    heuristic_topic_count,
    train_lda,
)

logger = logging.getLogger(__name__)

SLOT_ASPECTS = ("background", "purpose", "method", "finding", "whole")
SLOT_SCOPES = ("all", "covid")
MANIFEST_NAME = "manifest.json"


def slot_name(aspect: str, covid: bool) -> str:
    if aspect not in SLOT_ASPECTS:
        raise ValueError(f"aspect must be one of {SLOT_ASPECTS}")
    return f"{aspect}-{'covid' if covid else 'all'}"


def all_slot_names() -> tuple[str, ...]:
    return tuple(
        slot_name(aspect, scope == "covid")
        for aspect in SLOT_ASPECTS
        for scope in SLOT_SCOPES
    )


def resolve_assignments(
    snapshot: CorpusSnapshot, artifact: AspectArtifact | None
) -> dict[str, tuple[str, ...]] | None:
    """Per-sentence aspect labels for every paper, or None when unlabelable.

    Imported labels win over the classifier; artifact-level imports win
    over snapshot-level ones. Sentences with no import and no classifier
    fall back to "other".
    """
    imported: dict[tuple[str, int], str] = {}
    sources = [snapshot.imported_labels]
    if artifact is not None:
        sources.append(artifact.imported_labels)
    for triples in sources:
        for pid, idx, label in triples:
            try:
                imported[(pid, int(idx))] = canonical_label(label)
            except ValueError as exc:
                raise IngestionError(f"imported label for {pid!r}[{idx}]: {exc}") from exc

    model = artifact.model if artifact is not None else None
    if not imported and model is None:
        return None

    out = {}
    for doc in snapshot.docs:
        pid = doc.record.paper_id
        n = len(doc.sentences)
        labels = []
        for i in range(n):
            hit = imported.get((pid, i))
            if hit is not None:
                labels.append(hit)
            elif model is not None:
                dist = classify_sentence(model, doc.sentence_tokens[i], i / n)
                labels.append(dist.label)
            else:
                labels.append("other")
        out[pid] = tuple(labels)
    return out


def train_aspect_from_labeled(
    snapshot: CorpusSnapshot,
    labeled: Sequence[LabeledSentence],
    seed: int = 0,
) -> AspectModel:
    """Fit the sentence classifier from externally labeled sentences.

    Position fractions come from the sentence's place in its snapshot
    document; sentences from unknown papers sit at the neutral middle.
    """
    examples = []
    for item in labeled:
        doc = snapshot.get(item.paper_id)
        if doc is not None and len(doc.sentences) > 0:
            n = len(doc.sentences)
            fraction = min(item.sentence_index, n - 1) / n
        else:
            fraction = 0.5
        examples.append((tokenize(item.text), fraction, item.label))
    return train_aspect(examples, seed=seed, corpus_id=snapshot.corpus_id)


def slot_documents(
    snapshot: CorpusSnapshot,
    aspect: str,
    covid: bool,
    assignments: Mapping[str, tuple[str, ...]] | None,
) -> list[tuple[str, list[str]]]:
    """(paper_id, tokens) pairs for one slot, in snapshot order.

    The "whole" aspect takes every document's full token stream; a named
    aspect concatenates just the sentences labeled with it, keeping the
    papers that have at least one such sentence.
    """
    if aspect != "whole" and assignments is None:
        raise TrainingError(
            f"aspect slot {slot_name(aspect, covid)!r} needs sentence labels"
        )
    docs = []
    for doc in snapshot.docs:
        if covid and not doc.record.is_covid:
            continue
        pid = doc.record.paper_id
        if aspect == "whole":
            docs.append((pid, doc.tokens))
            continue
        labels = assignments.get(pid, ())
        tokens = [
            t
            for i, sent_tokens in enumerate(doc.sentence_tokens)
            if i < len(labels) and labels[i] == aspect
            for t in sent_tokens
        ]
        if tokens:
            docs.append((pid, tokens))
    return docs


@dataclass(frozen=True)
class SlotBundle:
    """Everything the service needs to answer queries for one slot."""

    slot: str
    model: LdaModel
    index: KnnIndex
    projection: tuple[ProjectedPoint, ...] | None

    def to_payload(self) -> dict:
        if self.projection is None:
            proj = None
        else:
            proj = {
                "paper_ids": [p.paper_id for p in self.projection],
                "coords": np.array(
                    [[p.x, p.y] for p in self.projection], dtype=np.float64
                ),
                "dominant": np.array(
                    [p.dominant_topic for p in self.projection], dtype=np.int64
                ),
            }
        return {
            "slot": self.slot,
            "model": self.model.to_payload(),
            "index": self.index.to_payload(),
            "projection": proj,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "SlotBundle":
        proj_raw = payload.get("projection")
        projection = None
        if proj_raw is not None:
            coords = proj_raw["coords"]
            dominant = proj_raw["dominant"]
            projection = tuple(
                ProjectedPoint(
                    paper_id=pid,
                    x=float(coords[i, 0]),
                    y=float(coords[i, 1]),
                    dominant_topic=int(dominant[i]),
                )
                for i, pid in enumerate(proj_raw["paper_ids"])
            )
        return cls(
            slot=str(payload["slot"]),
            model=LdaModel.from_payload(payload["model"]),
            index=KnnIndex.from_payload(payload["index"]),
            projection=projection,
        )

    def save(self, path: str | Path) -> str:
        return store.save("lda_bundle", self.to_payload(), path)

    @classmethod
    def load(cls, path: str | Path) -> "SlotBundle":
        _, payload = store.load(path, expected_kind="lda_bundle")
        return cls.from_payload(payload)


def train_slot(
    name: str,
    docs: Sequence[tuple[str, Sequence[str]]],
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 0,
    alpha: float = DEFAULT_ALPHA,
    beta: float = DEFAULT_BETA,
    vocab_config: VocabularyConfig | None = None,
    projection_config: ProjectionConfig | None = None,
) -> SlotBundle:
    """Vocabulary, LDA model, KNN index, and projection for one slot."""
    vocabulary = build_vocabulary(
        [tokens for _, tokens in docs], vocab_config or VocabularyConfig()
    )
    config = LdaConfig(
        num_topics=heuristic_topic_count(len(docs)),
        iterations=iterations,
        alpha=alpha,
        beta=beta,
        seed=seed,
    )
    model = train_lda(docs, vocabulary, config)
    index = build_index(model, slot=name)
    projection = None
    if len(model.doc_ids) >= MIN_POINTS:
        if projection_config is None:
            projection_config = ProjectionConfig(seed=seed, sample_over_cap=True)
        projection = tuple(project(model.theta, list(model.doc_ids), projection_config))
    else:
        logger.warning(
            "slot %s: %d documents is too few to project, skipping projection",
            name,
            len(model.doc_ids),
        )
    return SlotBundle(slot=name, model=model, index=index, projection=projection)


def train_all(
    snapshot: CorpusSnapshot,
    aspect_artifact: AspectArtifact | None,
    out_dir: str | Path,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 0,
    alpha: float = DEFAULT_ALPHA,
    beta: float = DEFAULT_BETA,
    vocab_config: VocabularyConfig | None = None,
    projection_config: ProjectionConfig | None = None,
) -> dict:
    """Train every slot, write bundles and a manifest, return the manifest.

    Slots with fewer than 2 documents are skipped with a warning. On any
    slot failure every file this call wrote is removed before the error
    propagates, so a partial run leaves nothing behind.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    assignments = resolve_assignments(snapshot, aspect_artifact)
    if assignments is None:
        logger.warning(
            "no aspect labels available: only the 'whole' slots will be trained"
        )

    manifest: dict = {
        "corpus_id": snapshot.corpus_id,
        "seed": seed,
        "iterations": iterations,
        "alpha": alpha,
        "beta": beta,
        "slots": {},
        "skipped": {},
    }
    written: list[Path] = []
    try:
        for aspect in SLOT_ASPECTS:
            for scope in SLOT_SCOPES:
                covid = scope == "covid"
                name = slot_name(aspect, covid)
                if aspect != "whole" and assignments is None:
                    manifest["skipped"][name] = "no aspect labels available"
                    continue
                docs = slot_documents(snapshot, aspect, covid, assignments)
                if len(docs) < 2:
                    reason = f"only {len(docs)} document(s)"
                    manifest["skipped"][name] = reason
                    logger.warning("skipping slot %s: %s", name, reason)
                    continue
                bundle = train_slot(
                    name,
                    docs,
                    iterations=iterations,
                    seed=seed,
                    alpha=alpha,
                    beta=beta,
                    vocab_config=vocab_config,
                    projection_config=projection_config,
                )
                path = out_dir / f"{name}.bundle"
                digest = bundle.save(path)
                written.append(path)
                manifest["slots"][name] = {
                    "file": path.name,
                    "hash": digest,
                    "documents": len(docs),
                    "topics": bundle.model.num_topics,
                    "excluded": list(bundle.model.excluded_doc_ids),
                    "projected": bundle.projection is not None,
                }
        manifest_path = out_dir / MANIFEST_NAME
        manifest_path.write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    except Exception:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return manifest


def load_bundles(models_dir: str | Path) -> dict[str, SlotBundle]:
    """Load every bundle the manifest lists, keyed by slot name."""
    models_dir = Path(models_dir)
    manifest_path = models_dir / MANIFEST_NAME
    if not manifest_path.is_file():
        raise IngestionError(f"no manifest at {manifest_path}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    bundles = {}
    for name, entry in manifest.get("slots", {}).items():
        bundles[name] = SlotBundle.load(models_dir / entry["file"])
    return bundles
