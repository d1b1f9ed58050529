import { el } from "../dom";
import { ASPECT_COLORS, UNLABELED_COLOR } from "../palette";
import type { AspectLabel, PaperEntity, PaperResponse, PaperSentence } from "../types";

const LEGEND_ORDER: AspectLabel[] = ["background", "purpose", "method", "finding", "other"];

function renderSentence(sentence: PaperSentence, entities: PaperEntity[]): HTMLElement {
  const span = el("span", `sentence aspect-${sentence.aspect ?? "none"}`);
  span.style.backgroundColor =
    sentence.aspect !== null ? ASPECT_COLORS[sentence.aspect] : UNLABELED_COLOR;

  // Entity offsets index the abstract; the server guarantees spans do
  // not overlap and do not cross sentence boundaries.
  const inside = entities
    .filter((e) => e.char_start >= sentence.char_start && e.char_end <= sentence.char_end)
    .sort((a, b) => a.char_start - b.char_start);
  let cursor = sentence.char_start;
  for (const entity of inside) {
    if (entity.char_start > cursor) {
      span.append(
        document.createTextNode(
          sentence.text.slice(cursor - sentence.char_start, entity.char_start - sentence.char_start),
        ),
      );
    }
    const mark = el("span", "entity", entity.text);
    mark.dataset["cui"] = entity.cui;
    mark.dataset["name"] = entity.name;
    mark.dataset["semanticType"] = entity.semantic_type;
    mark.dataset["definition"] = entity.definition;
    mark.title = `${entity.name} [${entity.cui}] ${entity.semantic_type}: ${entity.definition}`;
    span.append(mark);
    cursor = entity.char_end;
  }
  if (cursor < sentence.char_end) {
    span.append(
      document.createTextNode(sentence.text.slice(cursor - sentence.char_start)),
    );
  }
  return span;
}

/** One abstract: sentences tinted by aspect, entities underlined with tooltips. */
export function renderPaperView(payload: PaperResponse): HTMLElement {
  const root = el("section", "view view-paper");

  const head = el("header", "paper-head");
  head.append(
    el("h2", "paper-title", payload.title),
    el("span", "paper-date", payload.publish_time ?? "undated"),
  );
  if (payload.is_covid) {
    head.append(el("span", "covid-badge", "COVID"));
  }
  root.append(head);

  const legend = el("ul", "aspect-legend");
  for (const label of LEGEND_ORDER) {
    const item = el("li", "legend-item", label);
    item.style.backgroundColor = ASPECT_COLORS[label];
    legend.append(item);
  }
  root.append(legend);

  const body = el("p", "paper-abstract");
  payload.sentences.forEach((sentence, i) => {
    if (i > 0) body.append(document.createTextNode(" "));
    body.append(renderSentence(sentence, payload.entities));
  });
  root.append(body);
  return root;
}
