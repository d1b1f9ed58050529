import { el } from "../dom";
import type { QuestionsResponse, SearchResponse } from "../types";

export interface SearchHandlers {
  onQuery(q: string, matchAny: boolean): void;
  onOpenPaper(paperId: string): void;
}

/**
 * Keyword search: a dropdown of the predefined question terms plus a
 * free-text box. Matched terms are highlighted in each result row.
 */
export function renderSearchView(
  catalog: QuestionsResponse,
  result: SearchResponse | null,
  handlers: SearchHandlers,
  query = "",
  matchAny = false,
): HTMLElement {
  const root = el("section", "view view-search");

  const form = el("form", "search-form");
  const dropdown = el("select", "question-select");
  const placeholder = el("option", "", "predefined questions");
  placeholder.value = "";
  dropdown.append(placeholder);
  for (const question of catalog.questions) {
    const option = el("option", "", question);
    option.value = question;
    option.selected = question === query;
    dropdown.append(option);
  }

  const box = el("input", "search-box");
  box.type = "search";
  box.placeholder = "search abstracts";
  box.value = query;

  const anyToggle = el("input", "match-any");
  anyToggle.type = "checkbox";
  anyToggle.checked = matchAny;
  const anyLabel = el("label", "match-any-label", "match any term");
  anyLabel.prepend(anyToggle);

  dropdown.addEventListener("change", () => {
    if (dropdown.value !== "") {
      box.value = dropdown.value;
      handlers.onQuery(dropdown.value, anyToggle.checked);
    }
  });
  const submit = el("button", "search-submit", "Search");
  submit.type = "submit";
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (box.value.trim() !== "") handlers.onQuery(box.value, anyToggle.checked);
  });
  form.append(dropdown, box, anyLabel, submit);
  root.append(form);

  if (result !== null) {
    root.append(el("p", "search-total", `${result.total} matches for "${result.q}"`));
    const list = el("ol", "search-list");
    for (const hit of result.papers) {
      const row = el("li", "search-row");
      row.dataset["paperId"] = hit.paper_id;
      const title = el("a", "paper-title", hit.title);
      title.href = "#";
      title.addEventListener("click", (event) => {
        event.preventDefault();
        handlers.onOpenPaper(hit.paper_id);
      });
      const snippet = el("span", "search-snippet");
      for (const span of hit.matched_spans) {
        const mark = document.createElement("mark");
        mark.className = "hit-term";
        mark.textContent = span.term;
        snippet.append(mark);
        snippet.append(
          el("span", "hit-where", `chars ${span.char_start}-${span.char_end}`),
        );
      }
      row.append(title, snippet, el("span", "paper-date", hit.publish_time ?? "undated"));
      list.append(row);
    }
    root.append(list);
    if (result.total === 0) {
      root.append(el("p", "empty-state", `Nothing matches "${result.q}".`));
    }
  }
  return root;
}
