"""HTTP JSON API over immutable loaded artifacts.

Every endpoint is a pure function of (current state, request); the only
state transition is the atomic swap performed by POST /admin/reload (or
SIGHUP under the CLI's serve command).
"""

from __future__ import annotations

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware

from ..errors import (
    ArtifactError,
    AspectScopeError,
    ConfigError,
    EmptyQueryError,
    NotAvailableError,
    UnknownConceptError,
    UnknownPaperError,
    UnknownSlotError,
    UnknownTopicError,
)
from ..pipeline import SLOT_ASPECTS
from . import schemas
from .config import ServiceConfig
from .state import ServiceState, StateHolder, build_state
from .views import (
    dump_json,
    health_payload,
    paper_payload,
    projection_payload,
    questions_payload,
    recommend_payload,
    search_payload,
    stats_payload,
    topic_papers_payload,
    topics_payload,
)

_STATUS_BY_ERROR = (
    (EmptyQueryError, 400),
    (UnknownTopicError, 404),
    (UnknownPaperError, 404),
    (UnknownConceptError, 404),
    (UnknownSlotError, 503),
    (NotAvailableError, 503),
    (ConfigError, 500),
    (ArtifactError, 500),
)


def _status_for(exc: AspectScopeError) -> int:
    for kind, status in _STATUS_BY_ERROR:
        if isinstance(exc, kind):
            return status
    return 500


def _error_response(code: str, message: str, status: int) -> Response:
    body = dump_json({"error": {"code": code, "message": message}})
    return Response(content=body, status_code=status, media_type="application/json")


def _json(payload: dict) -> Response:
    return Response(content=dump_json(payload), media_type="application/json")


def _check_scope(scope: str) -> None:
    if scope not in SLOT_ASPECTS:
        raise RequestValidationError(
            [{"loc": ("query", "scope"), "msg": f"scope must be one of {SLOT_ASPECTS}"}]
        )


def create_app(
    config: ServiceConfig | None = None, state: ServiceState | None = None
) -> FastAPI:
    """Build the service around loaded artifacts.

    Pass ``state`` to serve pre-loaded artifacts (tests do), otherwise
    the artifacts named by ``config`` are loaded here.
    """
    if config is None:
        config = ServiceConfig()
    if state is None:
        state = build_state(config)
    holder = StateHolder(state)

    app = FastAPI(title="aspectscope", docs_url="/docs")
    app.state.holder = holder
    app.state.config = config

    if config.cors_origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[config.cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(AspectScopeError)
    async def _domain_error(request: Request, exc: AspectScopeError):
        return _error_response(exc.code, str(exc), _status_for(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        messages = "; ".join(str(err.get("msg", err)) for err in exc.errors())
        return _error_response("invalid_parameter", messages or "invalid request", 400)

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> Response:
        return _json(health_payload(holder.get()))

    @app.get("/stats", response_model=schemas.StatsResponse)
    def stats() -> Response:
        return _json(stats_payload(holder.get()))

    @app.get("/topics", response_model=schemas.TopicsResponse)
    def topics(
        scope: str = "whole",
        covid: bool = False,
        keyword_filter: str | None = Query(default=None, alias="filter"),
        limit: int | None = Query(default=None, ge=1),
        offset: int = Query(default=0, ge=0),
    ) -> Response:
        _check_scope(scope)
        return _json(
            topics_payload(
                holder.get(),
                scope,
                covid,
                keyword_filter,
                limit if limit is not None else config.default_limit,
                offset,
            )
        )

    @app.get("/topics/{topic_id}/papers", response_model=schemas.TopicPapersResponse)
    def topic_papers(
        topic_id: int,
        scope: str = "whole",
        covid: bool = False,
        order: str = "score",
        limit: int | None = Query(default=None, ge=1),
        offset: int = Query(default=0, ge=0),
    ) -> Response:
        _check_scope(scope)
        if order not in ("score", "date"):
            raise RequestValidationError(
                [{"loc": ("query", "order"), "msg": "order must be 'score' or 'date'"}]
            )
        return _json(
            topic_papers_payload(
                holder.get(),
                scope,
                covid,
                topic_id,
                order,
                limit if limit is not None else config.default_limit,
                offset,
                membership_threshold=config.membership_threshold,
            )
        )

    @app.post("/recommend", response_model=schemas.RecommendResponse)
    def recommend(body: schemas.RecommendRequest) -> Response:
        _check_scope(body.scope)
        return _json(
            recommend_payload(
                holder.get(), body.text, body.scope, body.covid, body.k, body.seed
            )
        )

    @app.get("/search", response_model=schemas.SearchResponse)
    def search(
        q: str,
        scope: str = "whole",
        covid: bool = False,
        match: str = "all",
        limit: int | None = Query(default=None, ge=1),
        offset: int = Query(default=0, ge=0),
    ) -> Response:
        _check_scope(scope)
        if match not in ("all", "any"):
            raise RequestValidationError(
                [{"loc": ("query", "match"), "msg": "match must be 'all' or 'any'"}]
            )
        return _json(
            search_payload(
                holder.get(),
                q,
                scope,
                covid,
                match == "any",
                limit if limit is not None else config.default_limit,
                offset,
            )
        )

    @app.get("/questions", response_model=schemas.QuestionsResponse)
    def questions() -> Response:
        return _json(questions_payload(holder.get()))

    @app.get("/projection", response_model=schemas.ProjectionResponse)
    def projection(scope: str = "whole", covid: bool = False) -> Response:
        _check_scope(scope)
        return _json(projection_payload(holder.get(), scope, covid))

    @app.get("/papers/{paper_id}", response_model=schemas.PaperResponse)
    def paper(paper_id: str) -> Response:
        return _json(paper_payload(holder.get(), paper_id))

    @app.post("/admin/reload", response_model=schemas.ReloadResponse)
    def reload() -> Response:
        if not config.snapshot:
            raise NotAvailableError("reload needs a config with artifact paths")
        fresh = build_state(config)
        holder.swap(fresh)
        return _json({"status": "reloaded", "corpus_id": fresh.snapshot.corpus_id})

    return app
