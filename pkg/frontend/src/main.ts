import { ApiClient } from "./api";
import { App } from "./app";
import { el } from "./dom";
import type { ViewName } from "./app";

const NAV_ITEMS: { view: ViewName; label: string }[] = [
  { view: "topics", label: "Topics" },
  { view: "recommend", label: "Recommend" },
  { view: "search", label: "Search" },
  { view: "plot", label: "Map" },
];

function mount(): void {
  const host = document.getElementById("app");
  if (host === null) throw new Error("missing #app element");
  const baseUrl = host.dataset["apiBase"] ?? "";

  const nav = el("nav", "main-nav");
  const content = el("main", "main-content");
  host.append(nav, content);

  const app = new App(content, new ApiClient(baseUrl));
  for (const item of NAV_ITEMS) {
    const button = el("button", "nav-item", item.label);
    button.addEventListener("click", () => void app.navigate({ view: item.view }));
    nav.append(button);
  }
  void app.navigate({ view: "topics" });
}

mount();
