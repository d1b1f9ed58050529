import { ApiClient, ApiError, isAbortError } from "./api";
import { el } from "./dom";
import type { Order, RecommendResponse, Scope } from "./types";
import { renderPaperView } from "./views/paper";
import { renderPlotView } from "./views/plot";
import { renderRecommendView } from "./views/recommend";
import { renderSearchView } from "./views/search";
import { renderTopicPapersView } from "./views/topicPapers";
import { renderTopicsView } from "./views/topics";

export type ViewName = "topics" | "topic-papers" | "recommend" | "search" | "plot" | "paper";

export interface ViewState {
  scope: Scope;
  covid: boolean;
  view: ViewName;
  topicId: number | null;
  paperId: string | null;
  filter: string;
  query: string;
  matchAny: boolean;
  order: Order;
  limit: number | null;
  history: ViewName[];
}

export const INITIAL_STATE: ViewState = {
  scope: "whole",
  covid: false,
  view: "topics",
  topicId: null,
  paperId: null,
  filter: "",
  query: "",
  matchAny: false,
  order: "score",
  limit: null,
  history: [],
};

function renderFailure(err: unknown): HTMLElement {
  const message =
    err instanceof ApiError ? `${err.code}: ${err.message}` : "request failed";
  return el("p", "error-banner", message);
}

/**
 * Single-page controller: holds the view state, issues exactly one API
 * round per navigation, and cancels whatever was in flight when the
 * user moves on.
 */
export class App {
  state: ViewState = INITIAL_STATE;
  private inflight: AbortController | null = null;
  private lastNav: Promise<void> = Promise.resolve();

  constructor(
    readonly root: HTMLElement,
    readonly api: ApiClient,
  ) {}

  navigate(partial: Partial<Omit<ViewState, "history">>): Promise<void> {
    const nextView = partial.view ?? this.state.view;
    this.state = {
      ...this.state,
      ...partial,
      history: [...this.state.history, nextView],
    };
    const nav = this.run(async (signal) => this.renderCurrent(signal));
    this.lastNav = nav;
    return nav;
  }

  /** Resolves once every chained navigation (including click handlers) settles. */
  async settle(): Promise<void> {
    let seen: Promise<void>;
    do {
      seen = this.lastNav;
      await seen;
    } while (seen !== this.lastNav);
  }

  private async run(build: (signal: AbortSignal) => Promise<HTMLElement>): Promise<void> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const content = await build(controller.signal);
      if (controller.signal.aborted) return;
      this.root.replaceChildren(content);
    } catch (err) {
      if (isAbortError(err) || controller.signal.aborted) return;
      this.root.replaceChildren(renderFailure(err));
    }
  }

  private selection(): { scope: Scope; covid: boolean } {
    return { scope: this.state.scope, covid: this.state.covid };
  }

  private openPaper = (paperId: string): void => {
    void this.navigate({ view: "paper", paperId });
  };

  private async renderCurrent(signal: AbortSignal): Promise<HTMLElement> {
    const sel = this.selection();
    switch (this.state.view) {
      case "topics": {
        const payload = await this.api.topics(
          sel,
          this.state.filter || undefined,
          signal,
        );
        return renderTopicsView(
          payload,
          {
            onFilterInput: (value) => void this.navigate({ filter: value }),
            onOpenTopic: (topicId) =>
              void this.navigate({ view: "topic-papers", topicId, order: "score", limit: null }),
          },
          this.state.filter,
        );
      }
      case "topic-papers": {
        if (this.state.topicId === null) throw new Error("no topic selected");
        const payload = await this.api.topicPapers(
          sel,
          this.state.topicId,
          this.state.order,
          this.state.limit ?? undefined,
          signal,
        );
        return renderTopicPapersView(payload, {
          onOrderChange: (order) => void this.navigate({ order }),
          onLimitChange: (limit) => void this.navigate({ limit }),
          onOpenPaper: this.openPaper,
        });
      }
      case "recommend":
        return this.recommendContent(null, null, "");
      case "search": {
        const catalog = await this.api.questions(signal);
        const q = this.state.query;
        const result = q
          ? await this.api.search(sel, q, this.state.matchAny, signal)
          : null;
        return renderSearchView(
          catalog,
          result,
          {
            onQuery: (value, matchAny) => void this.navigate({ query: value, matchAny }),
            onOpenPaper: this.openPaper,
          },
          q,
          this.state.matchAny,
        );
      }
      case "plot": {
        const [projection, topics] = await Promise.all([
          this.api.projection(sel, signal),
          this.api.topics(sel, undefined, signal),
        ]);
        return renderPlotView(projection, topics, { onOpenPaper: this.openPaper });
      }
      case "paper": {
        if (this.state.paperId === null) throw new Error("no paper selected");
        const payload = await this.api.paper(this.state.paperId, signal);
        return renderPaperView(payload);
      }
    }
  }

  private recommendContent(
    result: RecommendResponse | null,
    error: string | null,
    text: string,
  ): HTMLElement {
    return renderRecommendView(result, error, {
      onSubmit: (value) => void this.submitRecommend(value),
      onOpenPaper: this.openPaper,
    }, text);
  }

  /** POST the query text; a 4xx is rendered inline within the form view. */
  submitRecommend(text: string): Promise<void> {
    const nav = this.run(async (signal) => {
      try {
        const payload = await this.api.recommend(this.selection(), text, 10, signal);
        return this.recommendContent(payload, null, text);
      } catch (err) {
        if (err instanceof ApiError) {
          return this.recommendContent(null, `${err.code}: ${err.message}`, text);
        }
        throw err;
      }
    });
    this.lastNav = nav;
    return nav;
  }
}
