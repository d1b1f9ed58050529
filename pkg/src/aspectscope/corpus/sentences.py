"""Rule-based sentence segmentation.

A sentence boundary is a '.', '?' or '!' followed by whitespace and then
an uppercase letter or a digit, unless the punctuation closes a known
abbreviation (Fig., et al., ...). Spans are trimmed to exclude leading
and trailing whitespace, so together they cover exactly the non-whitespace
extent of the input text, in order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib.resources import files

_TERMINATORS = ".?!"


@dataclass(frozen=True)
class Sentence:
    """One sentence with its [char_start, char_end) span in the source text."""

    text: str
    char_start: int
    char_end: int


@dataclass(frozen=True)
class SentenceConfig:
    extra_abbreviations: tuple[str, ...] = field(default=())


@lru_cache(maxsize=None)
def default_abbreviations() -> tuple[str, ...]:
    raw = (files("aspectscope.corpus") / "data" / "abbreviations.txt").read_text(
        encoding="utf-8"
    )
    out = []
    for line in raw.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return tuple(out)


def _ends_with_abbreviation(text: str, end: int, abbreviations: tuple[str, ...]) -> bool:
    """Does text[:end] end with a standalone abbreviation token?"""
    head = text[:end]
    for abbr in abbreviations:
        if not head.endswith(abbr):
            continue
        before = end - len(abbr) - 1
        if before < 0 or not text[before].isalnum():
            return True
    return False


def segment_sentences(text: str, config: SentenceConfig | None = None) -> list[Sentence]:
    """Split *text* into trimmed, non-overlapping, ordered sentence spans."""
    if not text or not text.strip():
        return []
    abbreviations = default_abbreviations()
    if config is not None and config.extra_abbreviations:
        abbreviations = abbreviations + tuple(config.extra_abbreviations)

    breaks = []  # index just past the terminator of each sentence
    n = len(text)
    for i, ch in enumerate(text):
        if ch not in _TERMINATORS:
            continue
        j = i + 1
        if j >= n or not text[j].isspace():
            continue
        while j < n and text[j].isspace():
            j += 1
        if j >= n:
            continue
        nxt = text[j]
        if not (nxt.isupper() or nxt.isdigit()):
            continue
        if ch == "." and _ends_with_abbreviation(text, i + 1, abbreviations):
            continue
        breaks.append(i + 1)

    sentences = []
    start = 0
    for brk in breaks + [n]:
        chunk = text[start:brk]
        stripped = chunk.strip()
        if stripped:
            lead = len(chunk) - len(chunk.lstrip())
            s = start + lead
            e = s + len(stripped)
            sentences.append(Sentence(text=stripped, char_start=s, char_end=e))
        start = brk
    return sentences
