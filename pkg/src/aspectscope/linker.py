"""Dictionary-based entity recognition and concept linking.

A gazetteer compiles every concept surface form (canonical name plus
synonyms, lowercased with whitespace collapsed) into an Aho-Corasick
automaton. Text matching is case-insensitive and word-bounded using the
same word-character rule as keyword search (letters, digits, hyphen);
overlapping candidates resolve leftmost-longest.
"""

from __future__ import annotations

import json
import warnings
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import IngestionError, UnknownConceptError
from .store import load as store_load
from .store import save as store_save


@dataclass(frozen=True)
class Concept:
    cui: str
    canonical_name: str
    synonyms: tuple[str, ...] = ()
    semantic_type: str = ""
    definition: str = ""

    def __post_init__(self):
        if not self.cui:
            raise ValueError("cui must be non-empty")
        if not self.canonical_name:
            raise ValueError("canonical_name must be non-empty")

    def surface_forms(self) -> tuple[str, ...]:
        return (self.canonical_name, *self.synonyms)


@dataclass(frozen=True)
class EntitySpan:
    char_start: int
    char_end: int
    text: str
    cui: str


def normalize_form(form: str) -> str:
    return " ".join(form.lower().split())


def _is_word_char(c: str) -> bool:
    return c.isalnum() or c == "-"


class _Automaton:
    """Aho-Corasick matcher over a fixed set of patterns."""

    def __init__(self, patterns: Sequence[str]):
        self.patterns = list(patterns)
        self._goto: list[dict[str, int]] = [{}]
        self._out: list[list[int]] = [[]]
        for idx, pattern in enumerate(self.patterns):
            node = 0
            for ch in pattern:
                node = self._goto[node].setdefault(ch, self._new_node())
            self._out[node].append(idx)
        self._fail = [0] * len(self._goto)
        queue = deque()
        for child in self._goto[0].values():
            queue.append(child)
        while queue:
            node = queue.popleft()
            for ch, child in self._goto[node].items():
                queue.append(child)
                fallback = self._fail[node]
                while fallback and ch not in self._goto[fallback]:
                    fallback = self._fail[fallback]
                self._fail[child] = self._goto[fallback].get(ch, 0)
                self._out[child].extend(self._out[self._fail[child]])

    def _new_node(self) -> int:
        self._goto.append({})
        self._out.append([])
        return len(self._goto) - 1

    def finditer(self, text: str) -> Iterable[tuple[int, int]]:
        """Yield (end_exclusive, pattern_index) for every occurrence."""
        node = 0
        for pos, ch in enumerate(text):
            while node and ch not in self._goto[node]:
                node = self._fail[node]
            node = self._goto[node].get(ch, 0)
            for idx in self._out[node]:
                yield pos + 1, idx


@dataclass(frozen=True)
class Gazetteer:
    concepts: tuple[Concept, ...]
    form_to_cui: dict[str, str] = field(repr=False)
    _by_cui: dict[str, Concept] = field(repr=False)
    _automaton: _Automaton = field(repr=False)

    def lookup(self, cui: str) -> Concept:
        try:
            return self._by_cui[cui]
        except KeyError:
            raise UnknownConceptError(f"unknown concept id {cui!r}") from None

    def __len__(self) -> int:
        return len(self.concepts)

    def to_payload(self) -> dict:
        return {
            "concepts": [
                {
                    "cui": c.cui,
                    "name": c.canonical_name,
                    "synonyms": list(c.synonyms),
                    "semantic_type": c.semantic_type,
                    "definition": c.definition,
                }
                for c in self.concepts
            ]
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "Gazetteer":
        concepts = [
            Concept(
                cui=item["cui"],
                canonical_name=item["name"],
                synonyms=tuple(item["synonyms"]),
                semantic_type=item["semantic_type"],
                definition=item["definition"],
            )
            for item in payload["concepts"]
        ]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return build_gazetteer(concepts)

    def save(self, path) -> str:
        return store_save("gazetteer", self.to_payload(), path)

    @classmethod
    def load(cls, path) -> "Gazetteer":
        _, payload = store_load(path, expected_kind="gazetteer")
        return cls.from_payload(payload)


def build_gazetteer(concepts: Sequence[Concept]) -> Gazetteer:
    """Compile concepts into a matcher.

    A surface form shared by several concepts maps to the
    lexicographically smallest cui; a warning lists the collisions.
    """
    if not concepts:
        raise ValueError("at least one concept required")
    ordered = sorted(concepts, key=lambda c: c.cui)
    seen = set()
    for c in ordered:
        if c.cui in seen:
            raise ValueError(f"duplicate concept id {c.cui!r}")
        seen.add(c.cui)

    form_to_cui: dict[str, str] = {}
    collisions: dict[str, set[str]] = {}
    for concept in ordered:
        for form in concept.surface_forms():
            norm = normalize_form(form)
            if not norm:
                continue
            if norm in form_to_cui and form_to_cui[norm] != concept.cui:
                collisions.setdefault(norm, {form_to_cui[norm]}).add(concept.cui)
                continue  # cui-sorted iteration: first writer is smallest
            form_to_cui.setdefault(norm, concept.cui)
    if collisions:
        detail = "; ".join(
            f"{form!r} -> {sorted(cuis)}" for form, cuis in sorted(collisions.items())
        )
        warnings.warn(f"surface forms shared across concepts: {detail}", stacklevel=2)

    forms = sorted(form_to_cui)
    return Gazetteer(
        concepts=tuple(ordered),
        form_to_cui=form_to_cui,
        _by_cui={c.cui: c for c in ordered},
        _automaton=_Automaton(forms),
    )


def _normalize_text(text: str) -> tuple[str, list[int]]:
    """Lowercased, whitespace-collapsed text plus a map back to source offsets."""
    chars: list[str] = []
    offsets: list[int] = []
    pending_space = False
    for i, c in enumerate(text):
        if c.isspace():
            pending_space = bool(chars)
            continue
        if pending_space:
            chars.append(" ")
            offsets.append(i - 1)
            pending_space = False
        low = c.lower()
        chars.append(low if len(low) == 1 else c)
        offsets.append(i)
    return "".join(chars), offsets


def find_entities(gazetteer: Gazetteer, text: str) -> list[EntitySpan]:
    """Non-overlapping dictionary matches in *text*, in document order.

    Matching is case-insensitive on word boundaries; overlapping
    candidates resolve to the earliest start, then the longest span.
    """
    if not text:
        return []
    normalized, offsets = _normalize_text(text)
    n = len(normalized)
    patterns = gazetteer._automaton.patterns

    candidates = []
    for end, idx in gazetteer._automaton.finditer(normalized):
        start = end - len(patterns[idx])
        if start > 0 and _is_word_char(normalized[start - 1]):
            continue
        if end < n and _is_word_char(normalized[end]):
            continue
        candidates.append((start, -(end - start), patterns[idx]))
    candidates.sort()

    spans = []
    cursor = 0
    for start, neg_len, form in candidates:
        if start < cursor:
            continue
        end = start - neg_len
        orig_start = offsets[start]
        orig_end = offsets[end - 1] + 1
        spans.append(
            EntitySpan(
                char_start=orig_start,
                char_end=orig_end,
                text=text[orig_start:orig_end],
                cui=gazetteer.form_to_cui[form],
            )
        )
        cursor = end
    return spans


def link(gazetteer: Gazetteer, cui: str) -> Concept:
    return gazetteer.lookup(cui)


def read_concepts_jsonl(path: str | Path) -> list[Concept]:
    """Concepts from JSON-lines: {cui, name, synonyms, semantic_type, definition}."""
    out = []
    path = Path(path)
    if not path.is_file():
        raise IngestionError(f"concept dictionary not found: {path}")
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            item = json.loads(line)
            out.append(
                Concept(
                    cui=str(item["cui"]),
                    canonical_name=str(item["name"]),
                    synonyms=tuple(str(s) for s in item.get("synonyms", [])),
                    semantic_type=str(item.get("semantic_type", "")),
                    definition=str(item.get("definition", "")),
                )
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise IngestionError(f"{path}:{lineno}: bad concept record: {exc}") from exc
    return out


def read_concepts_tsv(path: str | Path) -> list[Concept]:
    """Concepts from tab-separated lines: cui, name, synonyms ('|'-joined), type, definition."""
    out = []
    path = Path(path)
    if not path.is_file():
        raise IngestionError(f"concept dictionary not found: {path}")
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) < 2:
            raise IngestionError(f"{path}:{lineno}: expected at least cui and name")
        parts += [""] * (5 - len(parts))
        cui, name, synonyms, semantic_type, definition = parts[:5]
        try:
            out.append(
                Concept(
                    cui=cui,
                    canonical_name=name,
                    synonyms=tuple(s for s in synonyms.split("|") if s),
                    semantic_type=semantic_type,
                    definition=definition,
                )
            )
        except ValueError as exc:
            raise IngestionError(f"{path}:{lineno}: bad concept record: {exc}") from exc
    return out
