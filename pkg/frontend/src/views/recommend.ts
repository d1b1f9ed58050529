import { el } from "../dom";
import type { RecommendResponse } from "../types";

export interface RecommendHandlers {
  onSubmit(text: string): void;
  onOpenPaper(paperId: string): void;
}

/**
 * Free-text recommendation form. `result` and `error` reflect the last
 * submission; a server rejection is shown inline above the form, not as
 * a page-level failure.
 */
export function renderRecommendView(
  result: RecommendResponse | null,
  error: string | null,
  handlers: RecommendHandlers,
  text = "",
): HTMLElement {
  const root = el("section", "view view-recommend");

  if (error !== null) {
    root.append(el("p", "error-banner", error));
  }

  const form = el("form", "recommend-form");
  const input = el("textarea", "recommend-text");
  input.placeholder = "Paste abstract text to find similar papers";
  input.value = text;
  const submit = el("button", "recommend-submit", "Recommend");
  submit.type = "submit";
  submit.disabled = input.value.trim() === "";
  input.addEventListener("input", () => {
    submit.disabled = input.value.trim() === "";
  });
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (input.value.trim() !== "") handlers.onSubmit(input.value);
  });
  form.append(input, submit);
  root.append(form);

  if (result !== null) {
    const list = el("ol", "recommend-list");
    for (const paper of result.papers) {
      const row = el("li", "recommend-row");
      row.dataset["paperId"] = paper.paper_id;
      const title = el("a", "paper-title", paper.title);
      title.href = "#";
      title.addEventListener("click", (event) => {
        event.preventDefault();
        handlers.onOpenPaper(paper.paper_id);
      });
      row.append(
        title,
        el("span", "paper-distance", paper.distance.toFixed(3)),
        el("span", "paper-date", paper.publish_time ?? "undated"),
      );
      list.append(row);
    }
    root.append(list);
    if (result.papers.length === 0) {
      root.append(el("p", "empty-state", "No similar papers found."));
    }
  }
  return root;
}
