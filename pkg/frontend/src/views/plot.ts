import { el, svgEl } from "../dom";
import { topicColor } from "../palette";
import type { ProjectionResponse, TopicsResponse } from "../types";

export interface PlotHandlers {
  onOpenPaper(paperId: string): void;
}

const WIDTH = 640;
const HEIGHT = 480;
const POINT_RADIUS = 4;

/**
 * Scatter plot of the corpus projection, one circle per paper, colored
 * by dominant topic. Hovering shows the title and the topic's words;
 * dragging pans the view.
 */
export function renderPlotView(
  projection: ProjectionResponse,
  topics: TopicsResponse,
  handlers: PlotHandlers,
): HTMLElement {
  const root = el("section", "view view-plot");
  const tooltip = el("div", "plot-tooltip");
  tooltip.style.display = "none";

  const points = projection.points;
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const padX = (maxX - minX || 1) * 0.05;
  const padY = (maxY - minY || 1) * 0.05;
  const spanX = maxX - minX + 2 * padX;
  const spanY = maxY - minY + 2 * padY;
  const toScreenX = (x: number): number => ((x - minX + padX) / spanX) * WIDTH;
  const toScreenY = (y: number): number => HEIGHT - ((y - minY + padY) / spanY) * HEIGHT;

  const svg = svgEl("svg", {
    class: "plot-canvas",
    width: String(WIDTH),
    height: String(HEIGHT),
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
  });

  const wordsByTopic = new Map(
    topics.topics.map((t) => [t.topic_id, t.top_words.map((w) => w.word)]),
  );

  for (const point of points) {
    const circle = svgEl("circle", {
      class: "plot-point",
      cx: String(toScreenX(point.x)),
      cy: String(toScreenY(point.y)),
      r: String(POINT_RADIUS),
      fill: topicColor(point.dominant_topic),
      "data-paper-id": point.paper_id,
      "data-x": String(point.x),
      "data-y": String(point.y),
      "data-topic": String(point.dominant_topic),
    });
    circle.addEventListener("mouseenter", () => {
      const words = wordsByTopic.get(point.dominant_topic) ?? [];
      tooltip.textContent = `${point.title} | topic #${point.dominant_topic}: ${words.join(", ")}`;
      tooltip.style.display = "block";
    });
    circle.addEventListener("mouseleave", () => {
      tooltip.style.display = "none";
    });
    circle.addEventListener("click", () => handlers.onOpenPaper(point.paper_id));
    svg.append(circle);
  }

  // Drag to pan: shift the viewBox opposite to the pointer movement.
  let dragFrom: { x: number; y: number } | null = null;
  let view = { x: 0, y: 0 };
  svg.addEventListener("mousedown", (event) => {
    dragFrom = { x: event.clientX, y: event.clientY };
  });
  svg.addEventListener("mousemove", (event) => {
    if (dragFrom === null) return;
    view = { x: view.x - (event.clientX - dragFrom.x), y: view.y - (event.clientY - dragFrom.y) };
    dragFrom = { x: event.clientX, y: event.clientY };
    svg.setAttribute("viewBox", `${view.x} ${view.y} ${WIDTH} ${HEIGHT}`);
  });
  svg.addEventListener("mouseup", () => {
    dragFrom = null;
  });
  svg.addEventListener("mouseleave", () => {
    dragFrom = null;
  });

  root.append(
    el("p", "plot-count", `${points.length} papers`),
    svg,
    tooltip,
  );
  return root;
}
