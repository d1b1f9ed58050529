"""Tokenization and stopword handling.

Tokens are maximal runs of letters/digits with internal hyphens allowed
("covid-19" is one token). Everything is lowercased; stopwords and
single-character tokens are dropped. The stopword set is the shipped
English list merged with the section-header list, optionally extended by
the caller.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib.resources import files

# Letters/digits (no underscore), with hyphens joining runs.
_TOKEN_RE = re.compile(r"[^\W_]+(?:-[^\W_]+)*", re.UNICODE)

_DATA = files("aspectscope.corpus") / "data"


def _read_word_list(name: str) -> frozenset[str]:
    text = (_DATA / name).read_text(encoding="utf-8")
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


@lru_cache(maxsize=None)
def english_stopwords() -> frozenset[str]:
    """The shipped English stopword list."""
    return _read_word_list("stopwords_english.txt")


@lru_cache(maxsize=None)
def section_stopwords() -> frozenset[str]:
    """Section-header words (method, introduction, ...)."""
    return _read_word_list("stopwords_sections.txt")


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset[str]:
    """English list merged with the section-header list."""
    return english_stopwords() | section_stopwords()


def tokenize(text: str, stopwords: frozenset[str] | None = None) -> list[str]:
    """Lowercase tokens of *text* with stopwords and 1-char tokens removed.

    ``stopwords`` defaults to :func:`default_stopwords`.
    """
    if not text:
        return []
    if stopwords is None:
        stopwords = default_stopwords()
    out = []
    for match in _TOKEN_RE.finditer(text.lower()):
        token = match.group()
        if len(token) > 1 and token not in stopwords:
            out.append(token)
    return out
