"""Browsing and ranking queries over a trained topic model."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Mapping, Sequence

import numpy as np

from ..errors import UnknownTopicError

TOP_WORDS = 10
MEMBERSHIP_THRESHOLD = 0.25


@dataclass(frozen=True)
class TopicSummary:
    topic_id: int
    top_words: tuple[tuple[str, float], ...]
    doc_count: int


@dataclass(frozen=True)
class RankedPaper:
    paper_id: str
    score: float
    publish_time: date | None


def _top_words(phi_row: np.ndarray, words: Sequence[str], n: int) -> tuple[tuple[str, float], ...]:
    order = sorted(range(len(words)), key=lambda i: (-phi_row[i], words[i]))
    return tuple((words[i], float(phi_row[i])) for i in order[:n])


def summarize_topics(model, top_n: int = TOP_WORDS) -> list[TopicSummary]:
    """One summary per topic; document counts tally theta argmaxes."""
    assignments = np.argmax(model.theta, axis=1)
    counts = np.bincount(assignments, minlength=model.num_topics)
    words = model.vocabulary.words
    return [
        TopicSummary(
            topic_id=k,
            top_words=_top_words(model.phi[k], words, top_n),
            doc_count=int(counts[k]),
        )
        for k in range(model.num_topics)
    ]


def list_topics(model, keyword_filter: str | None = None) -> list[TopicSummary]:
    """Topics ordered by document count descending, ties by topic_id.

    With ``keyword_filter``, only topics whose top-10 word list contains
    every lowercase filter token are kept.
    """
    summaries = summarize_topics(model)
    if keyword_filter is not None:
        wanted = keyword_filter.lower().split()
        summaries = [
            s for s in summaries
            if all(t in {w for w, _ in s.top_words} for t in wanted)
        ]
    summaries.sort(key=lambda s: (-s.doc_count, s.topic_id))
    return summaries


def papers_in_topic(
    model,
    topic_id: int,
    order_by: str = "score",
    limit: int | None = None,
    membership_threshold: float = MEMBERSHIP_THRESHOLD,
    dates: Mapping[str, date | None] | None = None,
) -> list[RankedPaper]:
    """Papers belonging to one topic, ranked by affinity score or by date.

    A paper belongs to the topic when the topic is its theta argmax or
    its score meets ``membership_threshold``. Score ordering is
    descending; date ordering is newest first with undated papers last.
    Ties break by paper_id.
    """
    if not 0 <= topic_id < model.num_topics:
        raise UnknownTopicError(
            f"unknown topic {topic_id}: model has {model.num_topics} topics"
        )
    if order_by not in ("score", "date"):
        raise ValueError("order_by must be 'score' or 'date'")

    scores = model.theta[:, topic_id]
    member = (np.argmax(model.theta, axis=1) == topic_id) | (
        scores >= membership_threshold
    )
    items = []
    for d in np.flatnonzero(member):
        paper_id = model.doc_ids[d]
        when = dates.get(paper_id) if dates is not None else None
        items.append(RankedPaper(paper_id, float(scores[d]), when))

    if order_by == "score":
        items.sort(key=lambda p: (-p.score, p.paper_id))
    else:
        items.sort(
            key=lambda p: (
                p.publish_time is None,
                -(p.publish_time.toordinal() if p.publish_time else 0),
                p.paper_id,
            )
        )
    return items if limit is None else items[:limit]
