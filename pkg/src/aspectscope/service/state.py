"""Loaded artifacts behind the service, swapped atomically on reload."""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from ..aspect import AspectArtifact
from ..corpus import CorpusSnapshot
from ..errors import ConfigError, UnknownSlotError
from ..linker import Gazetteer
from ..pipeline import SLOT_ASPECTS, SlotBundle, load_bundles, resolve_assignments, slot_name
from ..search import question_terms
from .config import ServiceConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ServiceState:
    """One immutable set of artifacts; requests never see a partial mix."""

    snapshot: CorpusSnapshot
    bundles: dict[str, SlotBundle]
    assignments: dict[str, tuple[str, ...]] | None = None
    gazetteer: Gazetteer | None = None
    questions: tuple[str, ...] | None = None
    titles: dict[str, str] = field(default_factory=dict)
    dates: dict[str, date | None] = field(default_factory=dict)

    def bundle(self, aspect: str, covid: bool) -> SlotBundle:
        name = slot_name(aspect, covid)
        found = self.bundles.get(name)
        if found is None:
            raise UnknownSlotError(name, list(self.bundles))
        return found


def build_state(config: ServiceConfig) -> ServiceState:
    """Load everything the config names; optional artifacts may be absent."""
    if not config.snapshot:
        raise ConfigError("config must set 'snapshot'")
    if not config.models_dir:
        raise ConfigError("config must set 'models_dir'")
    snapshot = CorpusSnapshot.load(config.snapshot)

    artifact = None
    if config.aspect_model:
        if not Path(config.aspect_model).is_file():
            raise ConfigError(f"aspect model not found: {config.aspect_model}")
        artifact = AspectArtifact.load(config.aspect_model)

    bundles = load_bundles(config.models_dir)

    gazetteer = None
    if config.gazetteer:
        if not Path(config.gazetteer).is_file():
            raise ConfigError(f"gazetteer not found: {config.gazetteer}")
        gazetteer = Gazetteer.load(config.gazetteer)

    try:
        questions = question_terms(config.questions or None)
    except ConfigError as exc:
        logger.warning("question catalog unavailable: %s", exc)
        questions = None

    return ServiceState(
        snapshot=snapshot,
        bundles=bundles,
        assignments=resolve_assignments(snapshot, artifact),
        gazetteer=gazetteer,
        questions=questions,
        titles={d.record.paper_id: d.record.title for d in snapshot.docs},
        dates={d.record.paper_id: d.record.publish_time for d in snapshot.docs},
    )


class StateHolder:
    """Thread-safe reference to the current state.

    Handlers read the reference once per request, so an atomic swap never
    mixes artifacts within a request.
    """

    def __init__(self, state: ServiceState):
        self._state = state
        self._lock = threading.Lock()

    def get(self) -> ServiceState:
        return self._state

    def swap(self, state: ServiceState) -> None:
        with self._lock:
            self._state = state


def aspect_choices() -> tuple[str, ...]:
    return SLOT_ASPECTS
