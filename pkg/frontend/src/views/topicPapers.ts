import { el } from "../dom";
import type { Order, TopicPapersResponse } from "../types";

export interface TopicPapersHandlers {
  onOrderChange(order: Order): void;
  onLimitChange(limit: number): void;
  onOpenPaper(paperId: string): void;
}

const LIMIT_CHOICES = [10, 19, 20, 50];

/** Papers of one topic; ordering and row count come from the payload. */
export function renderTopicPapersView(
  payload: TopicPapersResponse,
  handlers: TopicPapersHandlers,
): HTMLElement {
  const root = el("section", "view view-topic-papers");

  const bar = el("div", "toolbar");
  bar.append(
    el("h2", "topic-title", `Topic #${payload.topic_id}`),
    el("span", "paper-total", `${payload.total} papers`),
  );

  const orderToggle = el("select", "order-toggle");
  for (const order of ["score", "date"] as Order[]) {
    const option = el("option", "", order);
    option.value = order;
    option.selected = order === payload.order;
    orderToggle.append(option);
  }
  orderToggle.addEventListener("change", () =>
    handlers.onOrderChange(orderToggle.value as Order),
  );

  const limitSelect = el("select", "limit-select");
  for (const choice of LIMIT_CHOICES) {
    const option = el("option", "", String(choice));
    option.value = String(choice);
    option.selected = choice === payload.papers.length;
    limitSelect.append(option);
  }
  limitSelect.addEventListener("change", () =>
    handlers.onLimitChange(Number(limitSelect.value)),
  );
  bar.append(orderToggle, limitSelect);
  root.append(bar);

  const list = el("ol", "paper-list");
  for (const paper of payload.papers) {
    const row = el("li", "paper-row");
    row.dataset["paperId"] = paper.paper_id;
    const title = el("a", "paper-title", paper.title);
    title.href = "#";
    title.addEventListener("click", (event) => {
      event.preventDefault();
      handlers.onOpenPaper(paper.paper_id);
    });
    row.append(
      title,
      el("span", "paper-score", paper.score.toFixed(3)),
      el("span", "paper-date", paper.publish_time ?? "undated"),
    );
    list.append(row);
  }
  root.append(list);
  return root;
}
