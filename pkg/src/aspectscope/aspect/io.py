"""Labeled-sentence JSON-lines reader.

One object per line: {"paper_id": ..., "sentence_index": ...,
"text": ..., "label": ...} with label in {background, purpose, method,
finding, other}; "finding/contribution" is accepted as an alias.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..errors import IngestionError
from .model import canonical_label


@dataclass(frozen=True)
class LabeledSentence:
    paper_id: str
    sentence_index: int
    text: str
    label: str


def read_labeled_jsonl(path: str | Path) -> list[LabeledSentence]:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IngestionError(f"cannot read labeled sentences: {exc}") from exc
    out = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            labeled = LabeledSentence(
                paper_id=str(obj["paper_id"]),
                sentence_index=int(obj["sentence_index"]),
                text=str(obj["text"]),
                label=canonical_label(str(obj["label"])),
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise IngestionError(f"{path}:{lineno}: bad labeled sentence: {exc}") from exc
        out.append(labeled)
    return out
