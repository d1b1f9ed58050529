"""Request/response models documenting the JSON contract.

Routes build their bodies through :mod:`aspectscope.service.views` and
return raw bytes (keeping CLI and API output byte-identical); these
models drive validation of request bodies and the OpenAPI document.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class RecommendRequest(BaseModel):
    text: str
    scope: str = "whole"
    covid: bool = False
    k: int = Field(default=10, ge=1)
    seed: int = 0


class WordWeight(BaseModel):
    word: str
    weight: float


class TopicSummaryModel(BaseModel):
    topic_id: int
    doc_count: int
    top_words: list[WordWeight]


class TopicsResponse(BaseModel):
    scope: str
    covid: bool
    total: int
    topics: list[TopicSummaryModel]


class TopicPaperModel(BaseModel):
    paper_id: str
    title: str
    score: float
    publish_time: str | None


class TopicPapersResponse(BaseModel):
    scope: str
    covid: bool
    topic_id: int
    order: str
    total: int
    papers: list[TopicPaperModel]


class RecommendedPaperModel(BaseModel):
    paper_id: str
    title: str
    distance: float
    publish_time: str | None


class RecommendResponse(BaseModel):
    scope: str
    covid: bool
    k: int
    seed: int
    papers: list[RecommendedPaperModel]


class TermSpanModel(BaseModel):
    term: str
    char_start: int
    char_end: int


class SearchPaperModel(BaseModel):
    paper_id: str
    title: str
    publish_time: str | None
    matched_spans: list[TermSpanModel]


class SearchResponse(BaseModel):
    q: str
    scope: str
    covid: bool
    match: str
    total: int
    papers: list[SearchPaperModel]


class QuestionsResponse(BaseModel):
    questions: list[str]


class ProjectedPointModel(BaseModel):
    paper_id: str
    x: float
    y: float
    dominant_topic: int
    title: str


class ProjectionResponse(BaseModel):
    scope: str
    covid: bool
    points: list[ProjectedPointModel]


class SentenceModel(BaseModel):
    text: str
    char_start: int
    char_end: int
    aspect: str | None


class EntityModel(BaseModel):
    char_start: int
    char_end: int
    text: str
    cui: str
    name: str
    semantic_type: str
    definition: str


class PaperResponse(BaseModel):
    paper_id: str
    title: str
    publish_time: str | None
    is_covid: bool
    abstract: str
    sentences: list[SentenceModel]
    entities: list[EntityModel]


class HealthResponse(BaseModel):
    status: str
    corpus_id: str
    documents: int
    slots: list[str]
    gazetteer: bool
    questions: bool


class AspectCounts(BaseModel):
    all: int
    covid: int


class StatsResponse(BaseModel):
    corpus_id: str
    papers: dict


class ReloadResponse(BaseModel):
    status: str
    corpus_id: str


class ErrorBody(BaseModel):
    code: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody
