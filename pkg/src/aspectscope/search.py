"""Word-boundary keyword search and the research-question catalog.

A query is lowercased and split on whitespace; a document matches when
every term occurs as a whole word in its lowercased text (an "OR" flag
relaxes this to any term). Word characters are letters, digits, and
hyphen, so "covid" does not match inside "covid-19" while searching
"covid-19" matches it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from importlib.resources import files
from pathlib import Path
from typing import Sequence

from .errors import ConfigError, EmptyQueryError

_DEFAULT_CATALOG = files("aspectscope") / "data" / "questions.txt"


@dataclass(frozen=True)
class SearchDoc:
    """One searchable document.

    ``regions`` optionally restricts matching to character windows of
    ``text`` (used to scope search to aspect-labeled sentences); None
    searches the whole text.
    """

    paper_id: str
    text: str
    publish_time: date | None = None
    regions: tuple[tuple[int, int], ...] | None = None


@dataclass(frozen=True)
class TermSpan:
    term: str
    char_start: int
    char_end: int


@dataclass(frozen=True)
class SearchResult:
    paper_id: str
    matched_spans: tuple[TermSpan, ...]
    publish_time: date | None


def _lower_keep_length(text: str) -> str:
    # Per-char lowercasing so offsets into the original text stay valid
    # (a few Unicode chars lowercase to multiple chars; keep those as-is).
    return "".join(low if len(low := c.lower()) == 1 else c for c in text)


def _is_word_char(c: str) -> bool:
    return c.isalnum() or c == "-"


def _first_occurrence(
    lowered: str, term: str, regions: tuple[tuple[int, int], ...] | None
) -> tuple[int, int] | None:
    """Offsets of the first whole-word occurrence of *term*, or None."""
    start = 0
    n = len(lowered)
    while True:
        pos = lowered.find(term, start)
        if pos < 0:
            return None
        end = pos + len(term)
        boundary_ok = (pos == 0 or not _is_word_char(lowered[pos - 1])) and (
            end == n or not _is_word_char(lowered[end])
        )
        if boundary_ok and (
            regions is None or any(a <= pos and end <= b for a, b in regions)
        ):
            return pos, end
        start = pos + 1


def keyword_search(
    query: str, documents: Sequence[SearchDoc], match_any: bool = False
) -> list[SearchResult]:
    """Documents matching the query, newest first (undated last, ties by id).

    Default semantics require every query term; ``match_any`` accepts a
    document matching at least one. ``matched_spans`` carries each
    matched term's first occurrence.
    """
    terms = []
    for t in query.lower().split():
        if t not in terms:
            terms.append(t)
    if not terms:
        raise EmptyQueryError("query is empty")

    results = []
    for doc in documents:
        lowered = _lower_keep_length(doc.text)
        spans = []
        for term in terms:
            hit = _first_occurrence(lowered, term, doc.regions)
            if hit is not None:
                spans.append(TermSpan(term, hit[0], hit[1]))
        matched = len(spans) >= 1 if match_any else len(spans) == len(terms)
        if matched:
            results.append(SearchResult(doc.paper_id, tuple(spans), doc.publish_time))

    results.sort(
        key=lambda r: (
            r.publish_time is None,
            -(r.publish_time.toordinal() if r.publish_time else 0),
            r.paper_id,
        )
    )
    return results


def question_terms(path: str | Path | None = None) -> tuple[str, ...]:
    """The research-question term list, in file order.

    Reads the packaged default catalog unless *path* names another file.
    One term per line; '#' starts a comment. Missing, empty, or
    duplicated entries raise :class:`ConfigError`.
    """
    if path is None:
        source = _DEFAULT_CATALOG
        label = "default question catalog"
    else:
        source = Path(path)
        label = str(path)
        if not source.is_file():
            raise ConfigError(f"question catalog not found: {label}")
    terms: list[str] = []
    for line in source.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in terms:
            raise ConfigError(f"duplicate question term {line!r} in {label}")
        terms.append(line)
    if not terms:
        raise ConfigError(f"question catalog is empty: {label}")
    return tuple(terms)
