"""Response payload builders shared by the HTTP API and the CLI.

Both surfaces serialize these dicts with :func:`dump_json`, so a CLI
query and the matching API response are byte-identical. Field order is
fixed by construction order here and documented in the JSON schemas.
"""

from __future__ import annotations

import json
from datetime import date

from ..corpus import corpus_stats
from ..errors import EmptyQueryError, NotAvailableError, UnknownPaperError
from ..linker import find_entities
from ..pipeline import SLOT_ASPECTS, slot_name
from ..recommend import recommend_papers
from ..search import SearchDoc, keyword_search
from ..topics import list_topics, papers_in_topic
from .state import ServiceState


def dump_json(payload) -> bytes:
    """Canonical JSON encoding: compact, UTF-8, fixed field order."""
    return json.dumps(
        payload, ensure_ascii=False, separators=(",", ":"), allow_nan=False
    ).encode("utf-8")


def _iso(when: date | None) -> str | None:
    return when.isoformat() if when is not None else None


def _page(items: list, limit: int | None, offset: int) -> list:
    if offset:
        items = items[offset:]
    return items if limit is None else items[:limit]


def topics_payload(
    state: ServiceState,
    scope: str,
    covid: bool,
    keyword_filter: str | None = None,
    limit: int | None = 20,
    offset: int = 0,
) -> dict:
    bundle = state.bundle(scope, covid)
    summaries = list_topics(bundle.model, keyword_filter)
    page = _page(summaries, limit, offset)
    return {
        "scope": scope,
        "covid": covid,
        "total": len(summaries),
        "topics": [
            {
                "topic_id": s.topic_id,
                "doc_count": s.doc_count,
                "top_words": [{"word": w, "weight": weight} for w, weight in s.top_words],
            }
            for s in page
        ],
    }


def topic_papers_payload(
    state: ServiceState,
    scope: str,
    covid: bool,
    topic_id: int,
    order: str = "score",
    limit: int | None = 20,
    offset: int = 0,
    membership_threshold: float = 0.25,
) -> dict:
    bundle = state.bundle(scope, covid)
    ranked = papers_in_topic(
        bundle.model,
        topic_id,
        order_by=order,
        membership_threshold=membership_threshold,
        dates=state.dates,
    )
    page = _page(ranked, limit, offset)
    return {
        "scope": scope,
        "covid": covid,
        "topic_id": topic_id,
        "order": order,
        "total": len(ranked),
        "papers": [
            {
                "paper_id": p.paper_id,
                "title": state.titles.get(p.paper_id, ""),
                "score": p.score,
                "publish_time": _iso(p.publish_time),
            }
            for p in page
        ],
    }


def recommend_payload(
    state: ServiceState,
    text: str,
    scope: str,
    covid: bool,
    k: int = 10,
    seed: int = 0,
) -> dict:
    bundle = state.bundle(scope, covid)
    metadata = {
        pid: (state.titles.get(pid, ""), state.dates.get(pid))
        for pid in bundle.index.paper_ids
    }
    results = recommend_papers(
        text, bundle.model, bundle.index, k=k, seed=seed, metadata=metadata
    )
    return {
        "scope": scope,
        "covid": covid,
        "k": k,
        "seed": seed,
        "papers": [
            {
                "paper_id": r.paper_id,
                "title": r.title,
                "distance": r.distance,
                "publish_time": _iso(r.publish_time),
            }
            for r in results
        ],
    }


def _search_documents(state: ServiceState, scope: str, covid: bool) -> list[SearchDoc]:
    if scope != "whole" and state.assignments is None:
        raise NotAvailableError(
            f"aspect-scoped search needs sentence labels; slot {slot_name(scope, covid)!r} unavailable"
        )
    docs = []
    for doc in state.snapshot.docs:
        if covid and not doc.record.is_covid:
            continue
        pid = doc.record.paper_id
        regions = None
        if scope != "whole":
            labels = state.assignments.get(pid, ())
            regions = tuple(
                (s.char_start, s.char_end)
                for i, s in enumerate(doc.sentences)
                if i < len(labels) and labels[i] == scope
            )
            if not regions:
                continue
        docs.append(
            SearchDoc(
                paper_id=pid,
                text=doc.record.abstract,
                publish_time=doc.record.publish_time,
                regions=regions,
            )
        )
    return docs


def search_payload(
    state: ServiceState,
    q: str,
    scope: str,
    covid: bool,
    match_any: bool = False,
    limit: int | None = 20,
    offset: int = 0,
) -> dict:
    if not q.strip():
        raise EmptyQueryError("query is empty")
    results = keyword_search(q, _search_documents(state, scope, covid), match_any)
    page = _page(results, limit, offset)
    return {
        "q": q,
        "scope": scope,
        "covid": covid,
        "match": "any" if match_any else "all",
        "total": len(results),
        "papers": [
            {
                "paper_id": r.paper_id,
                "title": state.titles.get(r.paper_id, ""),
                "publish_time": _iso(r.publish_time),
                "matched_spans": [
                    {"term": s.term, "char_start": s.char_start, "char_end": s.char_end}
                    for s in r.matched_spans
                ],
            }
            for r in page
        ],
    }


def questions_payload(state: ServiceState) -> dict:
    if state.questions is None:
        raise NotAvailableError("question catalog not available")
    return {"questions": list(state.questions)}


def projection_payload(state: ServiceState, scope: str, covid: bool) -> dict:
    bundle = state.bundle(scope, covid)
    if bundle.projection is None:
        raise NotAvailableError(
            f"projection not built for slot {slot_name(scope, covid)!r}"
        )
    return {
        "scope": scope,
        "covid": covid,
        "points": [
            {
                "paper_id": p.paper_id,
                "x": p.x,
                "y": p.y,
                "dominant_topic": p.dominant_topic,
                "title": state.titles.get(p.paper_id, ""),
            }
            for p in bundle.projection
        ],
    }


def paper_payload(state: ServiceState, paper_id: str) -> dict:
    doc = state.snapshot.get(paper_id)
    if doc is None:
        raise UnknownPaperError(f"unknown paper {paper_id!r}")
    labels = ()
    if state.assignments is not None:
        labels = state.assignments.get(paper_id, ())
    sentences = [
        {
            "text": s.text,
            "char_start": s.char_start,
            "char_end": s.char_end,
            "aspect": labels[i] if i < len(labels) else None,
        }
        for i, s in enumerate(doc.sentences)
    ]
    entities = []
    if state.gazetteer is not None:
        for span in find_entities(state.gazetteer, doc.record.abstract):
            concept = state.gazetteer.lookup(span.cui)
            entities.append(
                {
                    "char_start": span.char_start,
                    "char_end": span.char_end,
                    "text": span.text,
                    "cui": span.cui,
                    "name": concept.canonical_name,
                    "semantic_type": concept.semantic_type,
                    "definition": concept.definition,
                }
            )
    return {
        "paper_id": paper_id,
        "title": doc.record.title,
        "publish_time": _iso(doc.record.publish_time),
        "is_covid": doc.record.is_covid,
        "abstract": doc.record.abstract,
        "sentences": sentences,
        "entities": entities,
    }


def health_payload(state: ServiceState) -> dict:
    return {
        "status": "ok",
        "corpus_id": state.snapshot.corpus_id,
        "documents": len(state.snapshot),
        "slots": sorted(state.bundles),
        "gazetteer": state.gazetteer is not None,
        "questions": state.questions is not None,
    }


def stats_payload(state: ServiceState) -> dict:
    counts = corpus_stats(state.snapshot, state.assignments or {})
    return {"corpus_id": state.snapshot.corpus_id, "papers": counts.as_dict()}


def aspect_scopes() -> tuple[str, ...]:
    return SLOT_ASPECTS
