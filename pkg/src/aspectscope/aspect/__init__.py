"""Sentence aspect classification and evaluation."""

from .evaluate import EvaluationReport, evaluate, report_from_confusion
from .io import LabeledSentence, read_labeled_jsonl
from .model import (
    LABELS,
    LABEL_INDEX,
    POSITION_BINS,
    AspectArtifact,
    AspectDistribution,
    AspectModel,
    TrainingMeta,
    canonical_label,
    classify_sentence,
    position_bin,
    train_aspect,
)

__all__ = [
    "LABELS",
    "LABEL_INDEX",
    "POSITION_BINS",
    "AspectArtifact",
    "AspectDistribution",
    "AspectModel",
    "EvaluationReport",
    "LabeledSentence",
    "TrainingMeta",
    "canonical_label",
    "classify_sentence",
    "evaluate",
    "position_bin",
    "read_labeled_jsonl",
    "report_from_confusion",
    "train_aspect",
]
