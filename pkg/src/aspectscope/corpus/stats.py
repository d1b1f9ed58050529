"""Per-aspect corpus counts for the stats report."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .snapshot import CorpusSnapshot

ASPECT_NAMES = ("background", "purpose", "method", "finding", "other")


@dataclass(frozen=True)
class CorpusStats:
    """Counts of papers containing each research aspect, plus totals."""

    per_aspect_all: dict[str, int]
    per_aspect_covid: dict[str, int]
    total_all: int
    total_covid: int

    def as_dict(self) -> dict:
        return {
            "aspects": {
                name: {
                    "all": self.per_aspect_all[name],
                    "covid": self.per_aspect_covid[name],
                }
                for name in ASPECT_NAMES
            },
            "whole": {"all": self.total_all, "covid": self.total_covid},
        }


def corpus_stats(
    snapshot: CorpusSnapshot, assignments: Mapping[str, Sequence[str]]
) -> CorpusStats:
    """Count papers with at least one sentence per aspect label.

    ``assignments`` maps paper_id to one label per sentence, in sentence
    order (the pipeline's resolved labels).
    """
    per_all = {name: 0 for name in ASPECT_NAMES}
    per_covid = {name: 0 for name in ASPECT_NAMES}
    total_covid = 0
    for doc in snapshot.docs:
        labels = set(assignments.get(doc.record.paper_id, ()))
        if doc.record.is_covid:
            total_covid += 1
        for name in labels:
            if name in per_all:
                per_all[name] += 1
                if doc.record.is_covid:
                    per_covid[name] += 1
    return CorpusStats(
        per_aspect_all=per_all,
        per_aspect_covid=per_covid,
        total_all=len(snapshot.docs),
        total_covid=total_covid,
    )
