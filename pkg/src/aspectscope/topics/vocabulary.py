"""Vocabulary construction with document-frequency pruning.

Words whose document-frequency proportion falls outside [min_df, max_df]
are removed; if more than max_features survive, the most frequent (by
total corpus count, ties lexicographic) are kept. The final word order is
lexicographic, so the vocabulary is independent of document order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import TrainingError

DEFAULT_MIN_DF = 0.001
DEFAULT_MAX_DF = 0.65
DEFAULT_MAX_FEATURES = 1_000_000


@dataclass(frozen=True)
class VocabularyConfig:
    min_df: float = DEFAULT_MIN_DF
    max_df: float = DEFAULT_MAX_DF
    max_features: int = DEFAULT_MAX_FEATURES

    def __post_init__(self):
        if not (0 <= self.min_df < self.max_df <= 1):
            raise ValueError("need 0 <= min_df < max_df <= 1")
        if self.max_features < 1:
            raise ValueError("max_features must be >= 1")


@dataclass(frozen=True)
class Vocabulary:
    words: tuple[str, ...]
    doc_freq: tuple[int, ...]  # documents containing each word
    n_docs: int

    def __post_init__(self):
        if len(self.words) != len(self.doc_freq):
            raise ValueError("words and doc_freq must align")

    def __len__(self) -> int:
        return len(self.words)

    def index(self) -> dict[str, int]:
        cached = getattr(self, "_index_cache", None)
        if cached is None:
            cached = {w: i for i, w in enumerate(self.words)}
            object.__setattr__(self, "_index_cache", cached)
        return cached

    def to_payload(self) -> dict:
        return {
            "words": list(self.words),
            "doc_freq": list(self.doc_freq),
            "n_docs": self.n_docs,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "Vocabulary":
        return cls(
            words=tuple(payload["words"]),
            doc_freq=tuple(int(x) for x in payload["doc_freq"]),
            n_docs=int(payload["n_docs"]),
        )


def build_vocabulary(
    tokenized_docs: Sequence[Sequence[str]],
    config: VocabularyConfig | None = None,
) -> Vocabulary:
    """Count, prune and order the corpus vocabulary.

    Raises :class:`TrainingError` when no documents are given or pruning
    removes every word.
    """
    config = config or VocabularyConfig()
    n_docs = len(tokenized_docs)
    if n_docs == 0:
        raise TrainingError("cannot build a vocabulary from zero documents")

    doc_freq: dict[str, int] = {}
    total_freq: dict[str, int] = {}
    for tokens in tokenized_docs:
        seen = set()
        for t in tokens:
            total_freq[t] = total_freq.get(t, 0) + 1
            if t not in seen:
                seen.add(t)
                doc_freq[t] = doc_freq.get(t, 0) + 1

    kept = [
        w
        for w, df in doc_freq.items()
        if config.min_df <= df / n_docs <= config.max_df
    ]
    if not kept:
        raise TrainingError("vocabulary empty after document-frequency pruning")
    if len(kept) > config.max_features:
        kept.sort(key=lambda w: (-total_freq[w], w))
        kept = kept[: config.max_features]
    kept.sort()
    return Vocabulary(
        words=tuple(kept),
        doc_freq=tuple(doc_freq[w] for w in kept),
        n_docs=n_docs,
    )
