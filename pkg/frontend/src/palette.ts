import type { AspectLabel } from "./types";

/**
 * Fixed aspect color palette. Tests assert against these exact values,
 * so changing a color is an interface change, not a style tweak.
 */
export const ASPECT_COLORS: Record<AspectLabel, string> = {
  background: "#aecbe8",
  purpose: "#f6c46a",
  method: "#9fd8a4",
  finding: "#e9a3b4",
  other: "#d4d4d4",
};

/** Sentences the server could not label get no aspect tint. */
export const UNLABELED_COLOR = "transparent";

/** Categorical colors for topics in the scatter plot, cycled by id. */
export const TOPIC_COLORS = [
  "#4e79a7",
  "#f28e2b",
  "#59a14f",
  "#e15759",
  "#b07aa1",
  "#76b7b2",
  "#edc948",
  "#ff9da7",
  "#9c755f",
  "#bab0ac",
];

export function topicColor(topicId: number): string {
  const color = TOPIC_COLORS[((topicId % TOPIC_COLORS.length) + TOPIC_COLORS.length) % TOPIC_COLORS.length];
  return color ?? TOPIC_COLORS[0]!;
}
