"""Classifier evaluation: confusion matrix, per-label P/R/F1, accuracy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import TrainingError
from .model import LABELS, LABEL_INDEX, AspectModel, canonical_label, classify_sentence


@dataclass(frozen=True)
class EvaluationReport:
    confusion: np.ndarray  # (5, 5), rows = true label, columns = predicted
    precision: dict[str, float]
    recall: dict[str, float]
    f1: dict[str, float]
    accuracy: float

    def as_dict(self) -> dict:
        return {
            "labels": list(LABELS),
            "confusion": self.confusion.tolist(),
            "precision": dict(self.precision),
            "recall": dict(self.recall),
            "f1": dict(self.f1),
            "accuracy": self.accuracy,
        }


def report_from_confusion(confusion: np.ndarray) -> EvaluationReport:
    """Standard one-vs-rest metrics from a 5x5 count matrix."""
    confusion = np.asarray(confusion, dtype=np.int64)
    if confusion.shape != (len(LABELS), len(LABELS)):
        raise ValueError("confusion matrix must be 5x5")
    total = confusion.sum()
    if total == 0:
        raise TrainingError("cannot evaluate on an empty test set")
    precision = {}
    recall = {}
    f1 = {}
    for i, name in enumerate(LABELS):
        tp = float(confusion[i, i])
        col = float(confusion[:, i].sum())
        row = float(confusion[i, :].sum())
        p = tp / col if col else 0.0
        r = tp / row if row else 0.0
        precision[name] = p
        recall[name] = r
        f1[name] = 2 * p * r / (p + r) if (p + r) else 0.0
    accuracy = float(np.trace(confusion)) / float(total)
    return EvaluationReport(
        confusion=confusion, precision=precision, recall=recall, f1=f1, accuracy=accuracy
    )


def evaluate(
    model: AspectModel,
    test_set: Iterable[tuple[Sequence[str], float, str]],
) -> EvaluationReport:
    """Run the classifier over a labeled test set and score it."""
    confusion = np.zeros((len(LABELS), len(LABELS)), dtype=np.int64)
    for tokens, position_fraction, label in test_set:
        true_idx = LABEL_INDEX[canonical_label(label)]
        predicted = classify_sentence(model, tokens, position_fraction).label
        confusion[true_idx, LABEL_INDEX[predicted]] += 1
    if confusion.sum() == 0:
        raise TrainingError("cannot evaluate on an empty test set")
    return report_from_confusion(confusion)
