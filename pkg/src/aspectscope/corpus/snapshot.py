"""Immutable corpus snapshot: records, sentence spans, tokens, labels.

The snapshot is what ingestion produces and everything downstream
consumes. It may carry externally produced sentence aspect labels;
those override the classifier wherever present.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import IngestionError
from .language import is_english
from .records import PaperRecord, ParseCounters, mark_covid, parse_publish_time
from .sentences import Sentence, segment_sentences
from .tokens import tokenize
from .. import store

_ENGLISH_NAMES = {"en", "eng", "english"}


@dataclass(frozen=True)
class PaperDoc:
    """One ingested paper with its segmented and tokenized abstract."""

    record: PaperRecord
    sentences: tuple[Sentence, ...]
    sentence_tokens: tuple[tuple[str, ...], ...]

    @property
    def tokens(self) -> list[str]:
        """Whole-abstract tokens (concatenation over sentences)."""
        return [t for sent in self.sentence_tokens for t in sent]


@dataclass(frozen=True)
class CorpusSnapshot:
    docs: tuple[PaperDoc, ...]
    # (paper_id, sentence_index, label) triples imported from an external
    # classifier; resolved ahead of the built-in model.
    imported_labels: tuple[tuple[str, int, str], ...] = field(default=())

    def __post_init__(self):
        seen = set()
        for doc in self.docs:
            pid = doc.record.paper_id
            if not pid:
                raise IngestionError("snapshot contains a record with an empty id")
            if pid in seen:
                raise IngestionError(f"snapshot contains duplicate paper id {pid!r}")
            seen.add(pid)

    def __len__(self) -> int:
        return len(self.docs)

    def get(self, paper_id: str) -> PaperDoc | None:
        return self._by_id().get(paper_id)

    def _by_id(self) -> dict[str, PaperDoc]:
        cached = getattr(self, "_by_id_cache", None)
        if cached is None:
            cached = {doc.record.paper_id: doc for doc in self.docs}
            object.__setattr__(self, "_by_id_cache", cached)
        return cached

    @property
    def corpus_id(self) -> str:
        """Deterministic fingerprint of the snapshot content."""
        cached = getattr(self, "_corpus_id_cache", None)
        if cached is None:
            cached = store.content_hash("corpus", self.to_payload())[:12]
            object.__setattr__(self, "_corpus_id_cache", cached)
        return cached

    # -- persistence -----------------------------------------------------

    def to_payload(self) -> dict:
        records = []
        spans = []
        tokens = []
        for doc in self.docs:
            r = doc.record
            records.append(
                [
                    r.paper_id,
                    r.title,
                    r.abstract,
                    r.publish_time.isoformat() if r.publish_time else "",
                    bool(r.is_covid),
                ]
            )
            spans.append([[s.char_start, s.char_end] for s in doc.sentences])
            tokens.append([list(ts) for ts in doc.sentence_tokens])
        return {
            "records": records,
            "sentence_spans": spans,
            "sentence_tokens": tokens,
            "imported_labels": [list(t) for t in self.imported_labels],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "CorpusSnapshot":
        docs = []
        for rec, spans, toks in zip(
            payload["records"], payload["sentence_spans"], payload["sentence_tokens"]
        ):
            paper_id, title, abstract, publish, is_covid = rec
            record = PaperRecord(
                paper_id=paper_id,
                title=title,
                abstract=abstract,
                publish_time=parse_publish_time(publish),
                is_covid=bool(is_covid),
            )
            sentences = tuple(
                Sentence(text=abstract[a:b], char_start=a, char_end=b) for a, b in spans
            )
            docs.append(
                PaperDoc(
                    record=record,
                    sentences=sentences,
                    sentence_tokens=tuple(tuple(ts) for ts in toks),
                )
            )
        imported = tuple(
            (pid, int(idx), label) for pid, idx, label in payload.get("imported_labels", [])
        )
        return cls(docs=tuple(docs), imported_labels=imported)

    def save(self, path: str | Path) -> str:
        return store.save("corpus", self.to_payload(), path)

    @classmethod
    def load(cls, path: str | Path) -> "CorpusSnapshot":
        _, payload = store.load(path, expected_kind="corpus")
        return cls.from_payload(payload)


def build_snapshot(
    records: list[PaperRecord],
    case_insensitive_covid: bool = False,
    counters: ParseCounters | None = None,
    imported_labels: tuple[tuple[str, int, str], ...] = (),
) -> CorpusSnapshot:
    """English-filter, covid-flag, segment and tokenize parsed records."""
    docs = []
    for record in mark_covid(records, case_insensitive=case_insensitive_covid):
        if record.language is not None:
            english = record.language in _ENGLISH_NAMES
        else:
            english = is_english(record.abstract)
        if not english:
            if counters is not None:
                counters.non_english_dropped += 1
                counters.kept -= 1
            continue
        sentences = tuple(segment_sentences(record.abstract))
        sentence_tokens = tuple(tuple(tokenize(s.text)) for s in sentences)
        docs.append(
            PaperDoc(record=record, sentences=sentences, sentence_tokens=sentence_tokens)
        )
    return CorpusSnapshot(docs=tuple(docs), imported_labels=imported_labels)
