"""LDA training and inference via collapsed Gibbs sampling.

Training runs full sweeps over token topic assignments and derives the
topic-word matrix (phi) and document-topic matrix (theta) from the final
counts with Dirichlet smoothing. New text folds in against the fixed
topic-word counts. Everything is deterministic given the config seed:
all randomness comes from one seeded PCG64 stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import TrainingError
from . import _gibbs
from .vocabulary import Vocabulary

MAX_TOPICS = 400
DEFAULT_ITERATIONS = 15
DEFAULT_ALPHA = 0.1
DEFAULT_BETA = 0.01
FOLD_ITERATIONS = 50
_AVERAGED_SWEEPS = 10


def heuristic_topic_count(n_docs: int) -> int:
    """Requested topic count: min(400, floor(sqrt(n_docs / 2)))."""
    if n_docs < 2:
        raise TrainingError("topic-count heuristic needs at least 2 documents")
    return max(1, min(MAX_TOPICS, math.isqrt(n_docs // 2)))


@dataclass(frozen=True)
class LdaConfig:
    num_topics: int
    iterations: int = DEFAULT_ITERATIONS
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    seed: int = 0

    def __post_init__(self):
        if self.num_topics < 1:
            raise ValueError("num_topics must be >= 1")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError("alpha and beta must be > 0")

    def to_payload(self) -> dict:
        return {
            "num_topics": self.num_topics,
            "iterations": self.iterations,
            "alpha": self.alpha,
            "beta": self.beta,
            "seed": self.seed,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "LdaConfig":
        return cls(
            num_topics=int(payload["num_topics"]),
            iterations=int(payload["iterations"]),
            alpha=float(payload["alpha"]),
            beta=float(payload["beta"]),
            seed=int(payload["seed"]),
        )


@dataclass(frozen=True)
class LdaModel:
    phi: np.ndarray  # (K, V) topic-word probabilities
    theta: np.ndarray  # (D, K) document-topic probabilities, trained docs
    topic_word_counts: np.ndarray  # (K, V) final counts, kept for fold-in
    vocabulary: Vocabulary
    config: LdaConfig
    doc_ids: tuple[str, ...]
    excluded_doc_ids: tuple[str, ...] = field(default=())
    log_joint_history: tuple[float, ...] = field(default=())

    @property
    def num_topics(self) -> int:
        return int(self.phi.shape[0])

    def __post_init__(self):
        if self.theta.shape[0] != len(self.doc_ids):
            raise TrainingError("theta rows must align with doc_ids")

    def to_payload(self) -> dict:
        return {
            "config": self.config.to_payload(),
            "vocabulary": self.vocabulary.to_payload(),
            "doc_ids": list(self.doc_ids),
            "excluded_doc_ids": list(self.excluded_doc_ids),
            "phi": self.phi,
            "theta": self.theta,
            "topic_word_counts": self.topic_word_counts,
            "log_joint_history": list(self.log_joint_history),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "LdaModel":
        return cls(
            phi=payload["phi"],
            theta=payload["theta"],
            topic_word_counts=payload["topic_word_counts"],
            vocabulary=Vocabulary.from_payload(payload["vocabulary"]),
            config=LdaConfig.from_payload(payload["config"]),
            doc_ids=tuple(payload["doc_ids"]),
            excluded_doc_ids=tuple(payload["excluded_doc_ids"]),
            log_joint_history=tuple(float(x) for x in payload["log_joint_history"]),
        )


def train_lda(
    tokenized_docs: Sequence[tuple[str, Sequence[str]]],
    vocabulary: Vocabulary,
    config: LdaConfig,
) -> LdaModel:
    """Train one LDA model.

    ``tokenized_docs`` pairs each document id with its token list. Docs
    left with no in-vocabulary tokens are excluded from training and
    recorded in ``excluded_doc_ids``.
    """
    index = vocabulary.index()
    V = len(vocabulary)
    K = config.num_topics

    doc_ids: list[str] = []
    excluded: list[str] = []
    flat_doc: list[int] = []
    flat_word: list[int] = []
    for paper_id, tokens in tokenized_docs:
        word_ids = [index[t] for t in tokens if t in index]
        if not word_ids:
            excluded.append(paper_id)
            continue
        d = len(doc_ids)
        doc_ids.append(paper_id)
        flat_doc.extend([d] * len(word_ids))
        flat_word.extend(word_ids)
    if not doc_ids:
        raise TrainingError("no trainable documents (all were emptied by pruning)")

    D = len(doc_ids)
    doc_arr = np.asarray(flat_doc, dtype=np.int32)
    word_arr = np.asarray(flat_word, dtype=np.int32)
    n_tokens = word_arr.shape[0]

    rng = np.random.default_rng(config.seed)
    z = rng.integers(0, K, n_tokens, dtype=np.int32)

    n_dk = np.zeros((D, K), dtype=np.int32)
    n_kw = np.zeros((K, V), dtype=np.int32)
    n_k = np.zeros(K, dtype=np.int32)
    np.add.at(n_dk, (doc_arr, z), 1)
    np.add.at(n_kw, (z, word_arr), 1)
    np.add.at(n_k, z, 1)
    n_d = n_dk.sum(axis=1)

    history = []
    for _ in range(config.iterations):
        _gibbs.train_sweep(
            doc_arr, word_arr, z, n_dk, n_kw, n_k,
            config.alpha, config.beta, rng.random(n_tokens),
        )
        history.append(
            float(_gibbs.log_joint(n_dk, n_kw, n_k, n_d, config.alpha, config.beta))
        )

    phi = (n_kw + config.beta) / (n_k + V * config.beta)[:, None]
    theta = (n_dk + config.alpha) / (n_d + K * config.alpha)[:, None]
    return LdaModel(
        phi=phi,
        theta=theta,
        topic_word_counts=n_kw,
        vocabulary=vocabulary,
        config=config,
        doc_ids=tuple(doc_ids),
        excluded_doc_ids=tuple(excluded),
        log_joint_history=tuple(history),
    )


def infer_topics(
    model: LdaModel,
    tokens: Sequence[str],
    infer_iterations: int = FOLD_ITERATIONS,
    seed: int = 0,
) -> np.ndarray:
    """Fold-in topic distribution for new text, length-K and summing to 1.

    Topic-word counts stay fixed; the result is the smoothed doc-topic
    distribution averaged over the last 10 sweeps. All-out-of-vocabulary
    input yields the uniform distribution.
    """
    if infer_iterations < 1:
        raise ValueError("infer_iterations must be >= 1")
    K = model.num_topics
    index = model.vocabulary.index()
    word_ids = np.asarray(
        [index[t] for t in tokens if t in index], dtype=np.int32
    )
    if word_ids.shape[0] == 0:
        return np.full(K, 1.0 / K)

    n_kw = model.topic_word_counts
    n_k = n_kw.sum(axis=1).astype(np.int64)
    alpha, beta = model.config.alpha, model.config.beta

    rng = np.random.default_rng(seed)
    z = rng.integers(0, K, word_ids.shape[0], dtype=np.int32)
    n_dk_local = np.bincount(z, minlength=K).astype(np.int64)

    averaged = min(_AVERAGED_SWEEPS, infer_iterations)
    acc = np.zeros(K, dtype=np.float64)
    denom = word_ids.shape[0] + K * alpha
    for sweep in range(infer_iterations):
        _gibbs.fold_sweep(
            word_ids, z, n_dk_local, n_kw, n_k, alpha, beta,
            rng.random(word_ids.shape[0]),
        )
        if sweep >= infer_iterations - averaged:
            acc += (n_dk_local + alpha) / denom
    return acc / averaged
