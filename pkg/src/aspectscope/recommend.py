"""Exact K-nearest-neighbor recommendation over topic distributions.

Documents are points in topic space (their theta rows). Queries fold in
through the slot's topic model and the nearest points by Euclidean
distance come back as recommendations. The scan is exact: argpartition
narrows to the k-smallest distances, then boundary ties resolve by
paper_id so the ranking always equals a full sort by (distance, id).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from typing import Mapping, Sequence

import numpy as np

from .corpus import tokenize
from .errors import DimensionMismatchError, EmptyQueryError, TrainingError
from .topics import LdaModel, infer_topics

DEFAULT_K = 10
ASPECT_CHOICES = ("background", "purpose", "method", "finding", "whole")


@dataclass(frozen=True)
class RecommendConfig:
    k: int = DEFAULT_K
    aspect: str = "whole"
    covid_only: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.aspect not in ASPECT_CHOICES:
            raise ValueError(f"aspect must be one of {ASPECT_CHOICES}")


@dataclass(frozen=True)
class Recommendation:
    paper_id: str
    title: str
    distance: float
    publish_time: date | None


@dataclass(frozen=True)
class KnnIndex:
    paper_ids: tuple[str, ...]
    vectors: np.ndarray  # (D, K) rows are topic distributions
    slot: str = ""

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.paper_ids):
            raise ValueError("vectors must have one row per paper_id")
        if len(set(self.paper_ids)) != len(self.paper_ids):
            raise ValueError("paper_ids must be unique")
        if self.vectors.size:
            if np.any(self.vectors < 0):
                raise ValueError("vectors must be non-negative")
            sums = self.vectors.sum(axis=1)
            if np.any(np.abs(sums - 1.0) > 1e-9):
                raise ValueError("vectors must each sum to 1")

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[1])

    def __len__(self) -> int:
        return len(self.paper_ids)

    def to_payload(self) -> dict:
        return {
            "paper_ids": list(self.paper_ids),
            "vectors": self.vectors,
            "slot": self.slot,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "KnnIndex":
        return cls(
            paper_ids=tuple(payload["paper_ids"]),
            vectors=payload["vectors"],
            slot=str(payload["slot"]),
        )


def build_index(model: LdaModel, slot: str = "") -> KnnIndex:
    if len(model.doc_ids) == 0:
        raise TrainingError("cannot index an empty model")
    return KnnIndex(paper_ids=model.doc_ids, vectors=model.theta, slot=slot)


def nearest(
    index: KnnIndex, query_vector: np.ndarray, k: int
) -> list[tuple[str, float]]:
    """The k points with the smallest Euclidean distance to the query.

    Results ascend by distance with ties broken by paper_id; fewer than
    k come back only when the index holds fewer points.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    query = np.asarray(query_vector, dtype=np.float64).reshape(-1)
    if query.shape[0] != index.dimension:
        raise DimensionMismatchError(
            f"query has {query.shape[0]} dimensions, index has {index.dimension}"
        )
    n = len(index)
    dist = np.sqrt(((index.vectors - query) ** 2).sum(axis=1))
    k_eff = min(k, n)
    if k_eff == n:
        candidates = range(n)
    else:
        part = np.argpartition(dist, k_eff - 1)
        kth = dist[part[k_eff - 1]]
        candidates = np.flatnonzero(dist <= kth)
    ranked = sorted(candidates, key=lambda i: (dist[i], index.paper_ids[i]))
    return [(index.paper_ids[i], float(dist[i])) for i in ranked[:k_eff]]


def recommend_papers(
    query_text: str,
    model: LdaModel,
    index: KnnIndex,
    k: int = DEFAULT_K,
    seed: int = 0,
    metadata: Mapping[str, tuple[str, date | None]] | None = None,
    stopwords: frozenset[str] | None = None,
) -> list[Recommendation]:
    """Tokenize a query, infer its topic mix, and return the k nearest papers.

    ``metadata`` maps paper_id to (title, publish_time) for the joined
    result rows; ids without an entry get an empty title.
    """
    tokens = tokenize(query_text, stopwords=stopwords)
    if not tokens:
        raise EmptyQueryError("query has no content words")
    theta = infer_topics(model, tokens, seed=seed)
    out = []
    for paper_id, distance in nearest(index, theta, k):
        title, when = ("", None)
        if metadata is not None and paper_id in metadata:
            title, when = metadata[paper_id]
        out.append(Recommendation(paper_id, title, distance, when))
    return out
