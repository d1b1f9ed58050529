import { el } from "../dom";
import { topicColor } from "../palette";
import type { TopicsResponse } from "../types";

export interface TopicsHandlers {
  /** Fired on every keystroke in the filter box; the server narrows. */
  onFilterInput(value: string): void;
  onOpenTopic(topicId: number): void;
}

/** Topic list in payload order (the server ranks by document count). */
export function renderTopicsView(
  payload: TopicsResponse,
  handlers: TopicsHandlers,
  filterValue = "",
): HTMLElement {
  const root = el("section", "view view-topics");

  const bar = el("div", "toolbar");
  const filter = el("input", "topic-filter");
  filter.type = "search";
  filter.placeholder = "filter topics by word";
  filter.value = filterValue;
  filter.addEventListener("input", () => handlers.onFilterInput(filter.value));
  bar.append(filter, el("span", "topic-total", `${payload.total} topics`));
  root.append(bar);

  const list = el("ul", "topic-list");
  for (const topic of payload.topics) {
    const row = el("li", "topic-row");
    row.dataset["topicId"] = String(topic.topic_id);
    const badge = el("span", "topic-badge", `#${topic.topic_id}`);
    badge.style.backgroundColor = topicColor(topic.topic_id);
    const count = el("span", "topic-count", `${topic.doc_count} papers`);
    const words = el("span", "topic-words");
    for (const { word } of topic.top_words) {
      words.append(el("span", "topic-word", word));
    }
    row.append(badge, count, words);
    row.addEventListener("click", () => handlers.onOpenTopic(topic.topic_id));
    list.append(row);
  }
  root.append(list);

  if (payload.topics.length === 0) {
    root.append(el("p", "empty-state", "No topics match this filter."));
  }
  return root;
}
