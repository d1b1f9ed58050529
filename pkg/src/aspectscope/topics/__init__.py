"""Topic modeling: vocabulary pruning, LDA training, and browsing queries."""

from .lda import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    DEFAULT_ITERATIONS,
    FOLD_ITERATIONS,
    MAX_TOPICS,
    LdaConfig,
    LdaModel,
    heuristic_topic_count,
    infer_topics,
    train_lda,
)
from .queries import (
    MEMBERSHIP_THRESHOLD,
    TOP_WORDS,
    RankedPaper,
    TopicSummary,
    list_topics,
    papers_in_topic,
    summarize_topics,
)
from .vocabulary import Vocabulary, VocabularyConfig, build_vocabulary

__all__ = [
    "DEFAULT_ALPHA",
    "DEFAULT_BETA",
    "DEFAULT_ITERATIONS",
    "FOLD_ITERATIONS",
    "MAX_TOPICS",
    "MEMBERSHIP_THRESHOLD",
    "TOP_WORDS",
    "LdaConfig",
    "LdaModel",
    "RankedPaper",
    "TopicSummary",
    "Vocabulary",
    "VocabularyConfig",
    "build_vocabulary",
    "heuristic_topic_count",
    "infer_topics",
    "list_topics",
    "papers_in_topic",
    "summarize_topics",
    "train_lda",
]
