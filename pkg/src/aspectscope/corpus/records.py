"""Metadata-file ingestion: PaperRecord parsing, dedup, covid flagging.

The input is a UTF-8 CSV with a header row. Required columns: the id
column (``cord_uid`` by default), ``title``, ``abstract`` and
``publish_time``; unknown columns are ignored. An empty abstract falls
back to the title. Duplicate ids keep the first occurrence. Rows with
neither id nor title are dropped.
"""

from __future__ import annotations

import csv
import hashlib
import io
import logging
from dataclasses import dataclass, replace
from datetime import date
from pathlib import Path
from typing import IO, Iterable

from ..errors import IngestionError

log = logging.getLogger(__name__)

DEFAULT_ID_COLUMN = "cord_uid"
_REQUIRED = ("title", "abstract", "publish_time")


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    title: str
    abstract: str
    publish_time: date | None = None
    is_covid: bool = False
    language: str | None = None


@dataclass
class ParseCounters:
    """Row accounting emitted by the ingest command."""

    kept: int = 0
    title_fallbacks: int = 0
    duplicates_dropped: int = 0
    empty_dropped: int = 0
    unreadable_skipped: int = 0
    non_english_dropped: int = 0  # filled by the snapshot builder

    def as_dict(self) -> dict[str, int]:
        return {
            "kept": self.kept,
            "title_fallbacks": self.title_fallbacks,
            "duplicates_dropped": self.duplicates_dropped,
            "empty_dropped": self.empty_dropped,
            "unreadable_skipped": self.unreadable_skipped,
            "non_english_dropped": self.non_english_dropped,
        }


def parse_publish_time(raw: str) -> date | None:
    """Parse an ISO-8601 date, a YYYY-MM, or a bare YYYY; None otherwise."""
    raw = (raw or "").strip()
    if not raw:
        return None
    try:
        return date.fromisoformat(raw)
    except ValueError:
        pass
    parts = raw.split("-")
    try:
        if len(parts) == 2:
            return date(int(parts[0]), int(parts[1]), 1)
        if len(parts) == 1 and len(parts[0]) == 4:
            return date(int(parts[0]), 1, 1)
    except ValueError:
        pass
    return None


def _synthesize_id(title: str) -> str:
    # Rows with a title but no id are kept; the id must be deterministic so
    # reruns dedup the same way.
    return "t-" + hashlib.sha256(title.encode("utf-8")).hexdigest()[:16]


def parse_metadata(
    source: str | Path | IO[str],
    id_column: str = DEFAULT_ID_COLUMN,
    counters: ParseCounters | None = None,
) -> list[PaperRecord]:
    """Parse the metadata CSV into deduplicated PaperRecords.

    Raises :class:`IngestionError` naming the missing column when the
    header lacks a required field; unreadable rows are skipped and counted.
    """
    if isinstance(source, (str, Path)):
        try:
            fh: IO[str] = open(source, "r", encoding="utf-8", newline="")
        except OSError as exc:
            raise IngestionError(f"cannot read metadata file: {exc}") from exc
        with fh:
            return parse_metadata(fh, id_column=id_column, counters=counters)

    counters = counters if counters is not None else ParseCounters()
    reader = csv.DictReader(source)
    header = reader.fieldnames
    if header is None:
        raise IngestionError("metadata file is empty (no header row)")
    for column in (id_column, *_REQUIRED):
        if column not in header:
            raise IngestionError(f"metadata file is missing required column {column!r}")
    has_language = "language" in header

    records: list[PaperRecord] = []
    seen: set[str] = set()
    while True:
        try:
            row = next(reader)
        except StopIteration:
            break
        except csv.Error as exc:
            counters.unreadable_skipped += 1
            log.warning("skipping unreadable metadata row: %s", exc)
            continue
        paper_id = (row.get(id_column) or "").strip()
        title = (row.get("title") or "").strip()
        abstract = (row.get("abstract") or "").strip()
        if not paper_id and not title:
            counters.empty_dropped += 1
            continue
        if not abstract:
            if not title:
                # No abstract and no title to fall back on: unusable.
                counters.empty_dropped += 1
                continue
            abstract = title
            counters.title_fallbacks += 1
        if not paper_id:
            paper_id = _synthesize_id(title)
        if paper_id in seen:
            counters.duplicates_dropped += 1
            continue
        seen.add(paper_id)
        language = (row.get("language") or "").strip().lower() if has_language else None
        records.append(
            PaperRecord(
                paper_id=paper_id,
                title=title,
                abstract=abstract,
                publish_time=parse_publish_time(row.get("publish_time") or ""),
                language=language or None,
            )
        )
        counters.kept += 1
    return records


def parse_metadata_text(text: str, id_column: str = DEFAULT_ID_COLUMN) -> list[PaperRecord]:
    """Convenience wrapper for in-memory CSV text."""
    return parse_metadata(io.StringIO(text), id_column=id_column)


def mark_covid(
    records: Iterable[PaperRecord], case_insensitive: bool = False
) -> list[PaperRecord]:
    """Set ``is_covid`` on each record from its abstract text.

    The flag is true iff the abstract contains the contiguous sequence
    "COVID"; matching "COVID" also covers "COVID-19". Case-sensitive by
    default, relaxed by ``case_insensitive``.
    """
    out = []
    for record in records:
        haystack = record.abstract.lower() if case_insensitive else record.abstract
        needle = "covid" if case_insensitive else "COVID"
        out.append(replace(record, is_covid=needle in haystack))
    return out
