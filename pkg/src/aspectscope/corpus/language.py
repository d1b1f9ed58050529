"""Stopword-ratio English detection.

A text counts as English when at least 8% of its whitespace-delimited
words (lowercased, punctuation-stripped at the edges) appear in the
English stopword list, and it has at least five words. Deterministic and
dependency-free; a language column in the metadata file, when present,
overrides this heuristic upstream.
"""

from __future__ import annotations

from .tokens import english_stopwords

DEFAULT_THRESHOLD = 0.08
MIN_WORDS = 5


def _strip_edges(word: str) -> str:
    start, end = 0, len(word)
    while start < end and not word[start].isalnum():
        start += 1
    while end > start and not word[end - 1].isalnum():
        end -= 1
    return word[start:end]


def is_english(text: str, threshold: float = DEFAULT_THRESHOLD) -> bool:
    """True iff the English-stopword hit ratio of *text* reaches *threshold*."""
    if not text:
        return False
    words = text.split()
    if len(words) < MIN_WORDS:
        return False
    stopwords = english_stopwords()
    hits = sum(1 for w in words if _strip_edges(w.lower()) in stopwords)
    return hits / len(words) >= threshold
