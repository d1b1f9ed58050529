/** Payload shapes of the aspectscope JSON API, field for field. */

export type AspectLabel = "background" | "purpose" | "method" | "finding" | "other";

/** Slot aspect selectable in the UI; "other" is not a slot. */
export type Scope = "background" | "purpose" | "method" | "finding" | "whole";

export type Order = "score" | "date";

export interface WordWeight {
  word: string;
  weight: number;
}

export interface TopicSummary {
  topic_id: number;
  doc_count: number;
  top_words: WordWeight[];
}

export interface TopicsResponse {
  scope: Scope;
  covid: boolean;
  total: number;
  topics: TopicSummary[];
}

export interface RankedPaper {
  paper_id: string;
  title: string;
  score: number;
  publish_time: string | null;
}

export interface TopicPapersResponse {
  scope: Scope;
  covid: boolean;
  topic_id: number;
  order: Order;
  total: number;
  papers: RankedPaper[];
}

export interface RecommendedPaper {
  paper_id: string;
  title: string;
  distance: number;
  publish_time: string | null;
}

export interface RecommendResponse {
  scope: Scope;
  covid: boolean;
  k: number;
  seed: number;
  papers: RecommendedPaper[];
}

export interface MatchedSpan {
  term: string;
  char_start: number;
  char_end: number;
}

export interface SearchHit {
  paper_id: string;
  title: string;
  publish_time: string | null;
  matched_spans: MatchedSpan[];
}

export interface SearchResponse {
  q: string;
  scope: Scope;
  covid: boolean;
  match: "all" | "any";
  total: number;
  papers: SearchHit[];
}

export interface QuestionsResponse {
  questions: string[];
}

export interface ProjectedPoint {
  paper_id: string;
  x: number;
  y: number;
  dominant_topic: number;
  title: string;
}

export interface ProjectionResponse {
  scope: Scope;
  covid: boolean;
  points: ProjectedPoint[];
}

export interface PaperSentence {
  text: string;
  char_start: number;
  char_end: number;
  aspect: AspectLabel | null;
}

export interface PaperEntity {
  char_start: number;
  char_end: number;
  text: string;
  cui: string;
  name: string;
  semantic_type: string;
  definition: string;
}

export interface PaperResponse {
  paper_id: string;
  title: string;
  publish_time: string | null;
  is_covid: boolean;
  abstract: string;
  sentences: PaperSentence[];
  entities: PaperEntity[];
}

export interface HealthResponse {
  status: string;
  corpus_id: string;
  documents: number;
  slots: string[];
  gazetteer: boolean;
  questions: boolean;
}

export interface ErrorBody {
  error: {
    code: string;
    message: string;
  };
}
