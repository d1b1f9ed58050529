"""Corpus ingestion: parsing, language filter, segmentation, tokenization."""

from .language import is_english
from .records import (
    DEFAULT_ID_COLUMN,
    PaperRecord,
    ParseCounters,
    mark_covid,
    parse_metadata,
    parse_metadata_text,
    parse_publish_time,
)
from .sentences import Sentence, SentenceConfig, default_abbreviations, segment_sentences
from .snapshot import CorpusSnapshot, PaperDoc, build_snapshot
from .stats import ASPECT_NAMES, CorpusStats, corpus_stats
from .tokens import default_stopwords, english_stopwords, section_stopwords, tokenize

__all__ = [
    "ASPECT_NAMES",
    "CorpusSnapshot",
    "CorpusStats",
    "DEFAULT_ID_COLUMN",
    "PaperDoc",
    "PaperRecord",
    "ParseCounters",
    "Sentence",
    "SentenceConfig",
    "build_snapshot",
    "corpus_stats",
    "default_abbreviations",
    "default_stopwords",
    "english_stopwords",
    "is_english",
    "mark_covid",
    "parse_metadata",
    "parse_metadata_text",
    "parse_publish_time",
    "section_stopwords",
    "segment_sentences",
    "tokenize",
]
