"""Shared synthetic fixtures and generators.

Everything here is deterministic: generators take explicit seeds and the
session-scoped trained environment is built once from fixed inputs.
"""

from __future__ import annotations

import io
import json
from datetime import date, timedelta

import numpy as np
import pytest

from aspectscope.aspect import AspectArtifact, read_labeled_jsonl
from aspectscope.corpus import build_snapshot, parse_metadata
from aspectscope.linker import Concept, build_gazetteer
from aspectscope.pipeline import train_aspect_from_labeled, train_all
from aspectscope.service import ServiceConfig, build_state

# ---------------------------------------------------------------------------
# Two-disjoint-topic corpus: the LDA recovery fixture.


def two_topic_corpus(
    n_docs: int = 300, half_size: int = 30, doc_len: int = 50, seed: int = 11
):
    """Documents drawn from one of two disjoint 30-word vocabularies.

    Returns (docs, truth, half_a, half_b) where docs are (paper_id,
    tokens) pairs and truth[i] is the generating topic of doc i.
    """
    rng = np.random.default_rng(seed)
    half_a = [f"alphaword{i:02d}" for i in range(half_size)]
    half_b = [f"betaword{i:02d}" for i in range(half_size)]
    docs = []
    truth = []
    for d in range(n_docs):
        topic = int(rng.integers(0, 2))
        pool = half_a if topic == 0 else half_b
        tokens = [pool[int(i)] for i in rng.integers(0, half_size, doc_len)]
        docs.append((f"p{d:04d}", tokens))
        truth.append(topic)
    return docs, truth, half_a, half_b


# ---------------------------------------------------------------------------
# Synthetic abstract corpus: drives ingestion, slots, search, service, E2E.

THEMES = {
    "vaccine": ["vaccine", "immunization", "antibody", "dose", "immunity", "trial"],
    "protein": ["protein", "spike", "receptor", "binding", "structure", "molecular"],
    "transmission": ["transmission", "contact", "spread", "exposure", "distancing", "community"],
}

# A few papers mix two themes so their topic vectors are unlike any
# one-theme paper; recommendation self-queries use these.
BLEND_PAPERS = {
    13: ("vaccine", "protein"),
    29: ("vaccine", "transmission"),
    41: ("protein", "transmission"),
}

ASPECT_MARKERS = {
    "background": ["epidemic", "worldwide", "burden"],
    "purpose": ["aimed", "investigate", "evaluate"],
    "method": ["cohort", "samples", "laboratory"],
    "finding": ["observed", "reduction", "significant"],
    "other": ["funding", "agency", "disclosure"],
}

_SENTENCE_SHAPES = [
    ("background", "The {m0} {t0} has placed a heavy {m2} on health systems {m1}."),
    ("purpose", "We {m0} to {m1} and {m2} the role of {t1} in patients."),
    ("method", "A prospective {m0} provided {m1} that were analyzed in the {m2} with {t2} assays."),
    ("finding", "We {m0} a {m2} {m1} in {t3} across the study period."),
    ("other", "This work received {m0} support from a national {m1} under an open {m2} statement."),
]


def synthetic_abstract(theme, covid: bool, include_other: bool, rng):
    """One themed abstract; returns (text, sentences, per-sentence labels).

    ``theme`` is a theme name or a pair of names; a pair alternates its
    topical words between the two pools.
    """
    if isinstance(theme, tuple):
        pools = [THEMES[theme[0]], THEMES[theme[1]]]
        t = [pools[j % 2][int(rng.integers(0, 6))] for j in range(4)]
    else:
        words = THEMES[theme]
        t = [words[int(i)] for i in rng.integers(0, len(words), 4)]
    sentences = []
    labels = []
    shapes = _SENTENCE_SHAPES if include_other else _SENTENCE_SHAPES[:4]
    for aspect, shape in shapes:
        m = ASPECT_MARKERS[aspect]
        sentences.append(
            shape.format(m0=m[0], m1=m[1], m2=m[2], t0=t[0], t1=t[1], t2=t[2], t3=t[3])
        )
        labels.append(aspect)
    if covid:
        sentences[0] = sentences[0][:-1] + " during the COVID-19 outbreak."
    return " ".join(sentences), sentences, labels


def synthetic_metadata(n: int = 100, seed: int = 7):
    """CSV text plus the known per-paper structure behind it.

    Returns (csv_text, info) with info[paper_id] = {"theme", "covid",
    "labels", "sentences", "title", "publish_time"}.
    """
    rng = np.random.default_rng(seed)
    theme_names = list(THEMES)
    rows = ["cord_uid,title,abstract,publish_time"]
    info = {}
    base = date(2020, 1, 1)
    for i in range(n):
        pid = f"p{i:04d}"
        theme = BLEND_PAPERS.get(i, theme_names[i % len(theme_names)])
        covid = i % 2 == 0
        include_other = i % 4 == 0
        abstract, sentences, labels = synthetic_abstract(theme, covid, include_other, rng)
        title = f"Study {i:04d} on corpus theme {i % len(theme_names)}"
        when = "" if i % 10 == 9 else (base + timedelta(days=i)).isoformat()
        quoted = '"' + abstract.replace('"', '""') + '"'
        rows.append(f"{pid},{title},{quoted},{when}")
        info[pid] = {
            "theme": theme,
            "covid": covid,
            "labels": labels,
            "sentences": sentences,
            "title": title,
            "publish_time": when or None,
        }
    return "\n".join(rows) + "\n", info


def labeled_sentences_jsonl(info: dict) -> str:
    """Gold per-sentence labels for the synthetic corpus, as JSONL text."""
    lines = []
    for pid, meta in info.items():
        for idx, label in enumerate(meta["labels"]):
            lines.append(
                json.dumps(
                    {
                        "paper_id": pid,
                        "sentence_index": idx,
                        "text": meta["sentences"][idx],
                        "label": label,
                    }
                )
            )
    return "\n".join(lines) + "\n"


FIXTURE_CONCEPTS = [
    Concept(
        cui="C0001",
        canonical_name="spike protein",
        synonyms=("s protein",),
        semantic_type="Amino Acid, Peptide, or Protein",
        definition="Surface glycoprotein mediating receptor binding.",
    ),
    Concept(
        cui="C0002",
        canonical_name="vaccine",
        synonyms=("immunization",),
        semantic_type="Immunologic Factor",
        definition="Preparation inducing protective immunity.",
    ),
    Concept(
        cui="C0003",
        canonical_name="antibody",
        synonyms=(),
        semantic_type="Immunologic Factor",
        definition="Immunoglobulin binding a specific antigen.",
    ),
    Concept(
        cui="C0004",
        canonical_name="transmission",
        synonyms=("community spread",),
        semantic_type="Phenomenon or Process",
        definition="Passage of a pathogen between hosts.",
    ),
]


def parse_csv_text(csv_text: str, counters=None):
    return parse_metadata(io.StringIO(csv_text), counters=counters)


# ---------------------------------------------------------------------------
# Session-scoped trained environment shared by service, CLI and E2E tests.


@pytest.fixture(scope="session")
def corpus_info():
    return synthetic_metadata(n=60, seed=7)


@pytest.fixture(scope="session")
def snapshot(corpus_info):
    csv_text, _ = corpus_info
    return build_snapshot(parse_csv_text(csv_text))


@pytest.fixture(scope="session")
def trained_env(tmp_path_factory, corpus_info, snapshot):
    """Snapshot, aspect model, all slot bundles, gazetteer and config on disk."""
    csv_text, info = corpus_info
    root = tmp_path_factory.mktemp("trained")
    snapshot_path = root / "corpus.snapshot"
    snapshot.save(snapshot_path)

    labeled_path = root / "labels.jsonl"
    labeled_path.write_text(labeled_sentences_jsonl(info), encoding="utf-8")
    labeled = read_labeled_jsonl(labeled_path)
    model = train_aspect_from_labeled(snapshot, labeled, seed=3)
    artifact = AspectArtifact(model=model)

    models_dir = root / "models"
    manifest = train_all(snapshot, artifact, models_dir, iterations=15, seed=3)
    aspect_path = root / "aspect.model"
    artifact.save(aspect_path)

    gazetteer_path = root / "concepts.gaz"
    build_gazetteer(FIXTURE_CONCEPTS).save(gazetteer_path)

    config = ServiceConfig(
        snapshot=str(snapshot_path),
        aspect_model=str(aspect_path),
        models_dir=str(models_dir),
        gazetteer=str(gazetteer_path),
    )
    config_path = root / "service.conf"
    config_path.write_text(
        "\n".join(
            [
                f"snapshot = {snapshot_path}",
                f"aspect_model = {aspect_path}",
                f"models_dir = {models_dir}",
                f"gazetteer = {gazetteer_path}",
            ]
        )
        + "\n",
        encoding="utf-8",
    )
    return {
        "root": root,
        "config": config,
        "config_path": config_path,
        "manifest": manifest,
        "info": info,
        "csv_text": csv_text,
        "labels_path": labeled_path,
    }


@pytest.fixture(scope="session")
def service_state(trained_env):
    return build_state(trained_env["config"])


# ---------------------------------------------------------------------------
# Separable labeled sentences: the aspect classifier accuracy fixture.


def separable_sentences(n: int = 1000, seed: int = 5):
    """(tokens, position_fraction, label) examples with disjoint vocabularies.

    Each label draws from its own 12-word pool and its own position band,
    so a correctly fitted classifier separates a held-out split perfectly.
    """
    rng = np.random.default_rng(seed)
    labels = ["background", "purpose", "method", "finding", "other"]
    pools = {label: [f"{label}tok{i:02d}" for i in range(12)] for label in labels}
    bands = dict(zip(labels, [(j / 5, (j + 1) / 5) for j in range(5)]))
    examples = []
    for i in range(n):
        label = labels[i % len(labels)]
        pool = pools[label]
        length = int(rng.integers(4, 9))
        tokens = [pool[int(j)] for j in rng.integers(0, len(pool), length)]
        lo, hi = bands[label]
        pos = float(lo + (hi - lo) * rng.random())
        examples.append((tokens, pos, label))
    return examples
