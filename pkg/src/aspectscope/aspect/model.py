"""Sentence aspect classifier.

Five labels in fixed order: background, purpose, method, finding, other
("finding" covers finding/contribution). The classifier is a Laplace-
smoothed multinomial naive Bayes over tokens combined log-linearly with a
positional prior over ten position bins. Ties in the argmax resolve to
the earlier label in the fixed order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .. import store
from ..errors import TrainingError

LABELS: tuple[str, ...] = ("background", "purpose", "method", "finding", "other")
LABEL_INDEX = {name: i for i, name in enumerate(LABELS)}

_ALIASES = {"finding/contribution": "finding"}

SMOOTHING = 1.0
POSITION_BINS = 10


def canonical_label(raw: str) -> str:
    """Normalize a label name; raises ValueError on anything unknown."""
    name = raw.strip().lower()
    name = _ALIASES.get(name, name)
    if name not in LABEL_INDEX:
        raise ValueError(f"unknown aspect label {raw!r}")
    return name


def position_bin(position_fraction: float) -> int:
    return min(POSITION_BINS - 1, max(0, int(position_fraction * POSITION_BINS)))


@dataclass(frozen=True)
class AspectDistribution:
    """Probability per label; sums to 1."""

    probabilities: tuple[float, ...]

    @property
    def label(self) -> str:
        """Argmax label, ties broken by the fixed label order."""
        return LABELS[int(np.argmax(self.probabilities))]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(LABELS, self.probabilities))


@dataclass(frozen=True)
class TrainingMeta:
    corpus_id: str = ""
    seed: int = 0
    created: str = ""  # caller-supplied; left empty for reproducible files


@dataclass(frozen=True)
class AspectModel:
    vocab: tuple[str, ...]
    token_logp: np.ndarray  # (5, V) log P(token | label)
    unknown_logp: np.ndarray  # (5,) smoothed floor for out-of-vocab tokens
    position_logp: np.ndarray  # (5, POSITION_BINS)
    prior_logp: np.ndarray  # (5,)
    meta: TrainingMeta = field(default_factory=TrainingMeta)

    def __post_init__(self):
        for arr in (self.token_logp, self.unknown_logp, self.position_logp, self.prior_logp):
            if not np.all(np.isfinite(arr)):
                raise TrainingError("aspect model weights must be finite")

    def _vocab_index(self) -> dict[str, int]:
        cached = getattr(self, "_vocab_index_cache", None)
        if cached is None:
            cached = {t: i for i, t in enumerate(self.vocab)}
            object.__setattr__(self, "_vocab_index_cache", cached)
        return cached

    # -- persistence -------------------------------------------------------

    def to_payload(self) -> dict:
        return {
            "labels": list(LABELS),
            "vocab": list(self.vocab),
            "token_logp": self.token_logp,
            "unknown_logp": self.unknown_logp,
            "position_logp": self.position_logp,
            "prior_logp": self.prior_logp,
            "meta": {
                "corpus_id": self.meta.corpus_id,
                "seed": self.meta.seed,
                "created": self.meta.created,
            },
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "AspectModel":
        meta = payload.get("meta", {})
        return cls(
            vocab=tuple(payload["vocab"]),
            token_logp=payload["token_logp"],
            unknown_logp=payload["unknown_logp"],
            position_logp=payload["position_logp"],
            prior_logp=payload["prior_logp"],
            meta=TrainingMeta(
                corpus_id=meta.get("corpus_id", ""),
                seed=int(meta.get("seed", 0)),
                created=meta.get("created", ""),
            ),
        )


def train_aspect(
    labeled_sentences: Iterable[tuple[Sequence[str], float, str]],
    seed: int = 0,
    corpus_id: str = "",
) -> AspectModel:
    """Fit the classifier on (tokens, position_fraction, label) examples.

    Deterministic given the input; the seed is recorded in the model
    metadata. Raises :class:`TrainingError` naming any label with zero
    examples.
    """
    examples = [(list(tokens), float(pos), canonical_label(label))
                for tokens, pos, label in labeled_sentences]
    support = {name: 0 for name in LABELS}
    for _, _, label in examples:
        support[label] += 1
    missing = [name for name, count in support.items() if count == 0]
    if missing:
        raise TrainingError(
            "no training examples for label(s): " + ", ".join(missing)
        )

    vocab = tuple(sorted({t for tokens, _, _ in examples for t in tokens}))
    index = {t: i for i, t in enumerate(vocab)}
    V = len(vocab)
    L = len(LABELS)

    token_counts = np.zeros((L, V), dtype=np.float64)
    token_totals = np.zeros(L, dtype=np.float64)
    bin_counts = np.zeros((L, POSITION_BINS), dtype=np.float64)
    label_counts = np.zeros(L, dtype=np.float64)
    for tokens, pos, label in examples:
        li = LABEL_INDEX[label]
        label_counts[li] += 1
        bin_counts[li, position_bin(pos)] += 1
        for t in tokens:
            token_counts[li, index[t]] += 1
            token_totals[li] += 1

    # One extra smoothed cell per label absorbs unseen tokens.
    denom = token_totals + SMOOTHING * (V + 1)
    token_logp = np.log((token_counts + SMOOTHING) / denom[:, None])
    unknown_logp = np.log(SMOOTHING / denom)
    position_logp = np.log(
        (bin_counts + SMOOTHING)
        / (label_counts + SMOOTHING * POSITION_BINS)[:, None]
    )
    prior_logp = np.log((label_counts + SMOOTHING) / (label_counts.sum() + SMOOTHING * L))

    return AspectModel(
        vocab=vocab,
        token_logp=token_logp,
        unknown_logp=unknown_logp,
        position_logp=position_logp,
        prior_logp=prior_logp,
        meta=TrainingMeta(corpus_id=corpus_id, seed=seed),
    )


def classify_sentence(
    model: AspectModel, tokens: Sequence[str], position_fraction: float
) -> AspectDistribution:
    """Posterior over labels for one sentence.

    An empty token list yields the positional-prior-only posterior. The
    argmax is invariant to positive rescaling of the unnormalized scores
    because scoring happens in log space.
    """
    index = model._vocab_index()
    scores = model.prior_logp + model.position_logp[:, position_bin(position_fraction)]
    for t in tokens:
        col = index.get(t)
        if col is None:
            scores = scores + model.unknown_logp
        else:
            scores = scores + model.token_logp[:, col]
    shifted = np.exp(scores - scores.max())
    probs = shifted / shifted.sum()
    return AspectDistribution(probabilities=tuple(float(p) for p in probs))


@dataclass(frozen=True)
class AspectArtifact:
    """Persisted classifier plus any imported per-sentence labels.

    Imported labels (paper_id, sentence_index, label) take precedence over
    the classifier when resolving a sentence's aspect.
    """

    model: AspectModel | None
    imported_labels: tuple[tuple[str, int, str], ...] = ()

    def to_payload(self) -> dict:
        return {
            "model": self.model.to_payload() if self.model is not None else None,
            "imported_labels": [list(t) for t in self.imported_labels],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "AspectArtifact":
        raw_model = payload.get("model")
        return cls(
            model=AspectModel.from_payload(raw_model) if raw_model is not None else None,
            imported_labels=tuple(
                (pid, int(idx), label)
                for pid, idx, label in payload.get("imported_labels", [])
            ),
        )

    def save(self, path: str | Path) -> str:
        return store.save("aspect_model", self.to_payload(), path)

    @classmethod
    def load(cls, path: str | Path) -> "AspectArtifact":
        _, payload = store.load(path, expected_kind="aspect_model")
        return cls.from_payload(payload)
