"""Record fixture payloads from the fixture service into this directory.

Run from the repository root after installing the Python package:

    python3 frontend/tests/fixtures/record.py

Rebuilds the deterministic 60-paper fixture corpus, trains it, and
saves the exact HTTP bodies the service returns for the routes the
browser client exercises. Tests replay these files through a fetch
stub, so the client test suite runs without the Python service.
"""

from __future__ import annotations

import io
import json
import sys
import tempfile
from pathlib import Path

HERE = Path(__file__).resolve().parent
REPO = HERE.parents[2]
sys.path.insert(0, str(REPO / "tests"))

from conftest import FIXTURE_CONCEPTS, labeled_sentences_jsonl, synthetic_metadata  # noqa: E402
from fastapi.testclient import TestClient  # noqa: E402

from aspectscope.aspect import AspectArtifact, read_labeled_jsonl  # noqa: E402
from aspectscope.corpus import build_snapshot, parse_metadata  # noqa: E402
from aspectscope.linker import build_gazetteer  # noqa: E402
from aspectscope.pipeline import train_all, train_aspect_from_labeled  # noqa: E402
from aspectscope.service import ServiceConfig, build_state, create_app  # noqa: E402

FILTER_TERM = "community"
EMPTY_TERM = "zebra"
SEARCH_TERM = "vaccine"
RECOMMEND_PAPER = "p0013"


def build_client() -> tuple[TestClient, dict]:
    csv_text, info = synthetic_metadata(n=60, seed=7)
    snap = build_snapshot(parse_metadata(io.StringIO(csv_text)))
    root = Path(tempfile.mkdtemp())
    snap_path = root / "corpus.snapshot"
    snap.save(snap_path)
    labels = root / "labels.jsonl"
    labels.write_text(labeled_sentences_jsonl(info), encoding="utf-8")
    model = train_aspect_from_labeled(snap, read_labeled_jsonl(labels), seed=3)
    artifact = AspectArtifact(model=model)
    train_all(snap, artifact, root / "models", iterations=15, seed=3)
    aspect_path = root / "aspect.model"
    artifact.save(aspect_path)
    gaz_path = root / "concepts.gaz"
    build_gazetteer(FIXTURE_CONCEPTS).save(gaz_path)
    config = ServiceConfig(
        snapshot=str(snap_path),
        aspect_model=str(aspect_path),
        models_dir=str(root / "models"),
        gazetteer=str(gaz_path),
    )
    return TestClient(create_app(config=config, state=build_state(config))), info


def record() -> None:
    client, info = build_client()

    def save(name: str, response) -> dict:
        (HERE / f"{name}.json").write_bytes(response.content + b"\n")
        return response.json()

    scoped = {"scope": "whole", "covid": "false"}
    save("health", client.get("/health"))
    save("stats", client.get("/stats"))
    topics = save("topics", client.get("/topics", params=scoped))
    filtered = save(
        "topics_filtered",
        client.get("/topics", params={**scoped, "filter": FILTER_TERM}),
    )
    assert 0 < filtered["total"] < topics["total"], "filter term must narrow"

    papers = save(
        "topic0_papers_score",
        client.get("/topics/0/papers", params={**scoped, "order": "score"}),
    )
    save(
        "topic0_papers_date",
        client.get("/topics/0/papers", params={**scoped, "order": "date"}),
    )
    nineteen = save(
        "topic0_papers_limit19",
        client.get(
            "/topics/0/papers", params={**scoped, "order": "score", "limit": "19"}
        ),
    )
    assert papers["total"] >= 19 and len(nineteen["papers"]) == 19

    text = " ".join(info[RECOMMEND_PAPER]["sentences"])
    body = {"text": text, "scope": "whole", "covid": False, "k": 10}
    resp = client.post("/recommend", json=body)
    assert resp.status_code == 200
    save("recommend", resp)
    bad = client.post("/recommend", json={**body, "text": "the of and"})
    assert bad.status_code == 400
    save("recommend_error", bad)

    save("questions", client.get("/questions"))
    hits = save(
        "search",
        client.get("/search", params={**scoped, "q": SEARCH_TERM, "match": "all"}),
    )
    assert hits["total"] > 0
    empty = save(
        "search_empty",
        client.get("/search", params={**scoped, "q": EMPTY_TERM, "match": "all"}),
    )
    assert empty["total"] == 0
    save("projection", client.get("/projection", params=scoped))

    paper_id = hits["papers"][0]["paper_id"]
    paper = save("paper", client.get(f"/papers/{paper_id}"))
    assert paper["entities"], "fixture paper must carry linked entities"

    (HERE / "meta.json").write_text(
        json.dumps(
            {
                "filter_term": FILTER_TERM,
                "empty_term": EMPTY_TERM,
                "search_term": SEARCH_TERM,
                "recommend_text": text,
                "paper_id": paper_id,
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    print(f"recorded fixtures into {HERE}")


if __name__ == "__main__":
    record()
