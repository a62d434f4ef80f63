/** Topic word cloud: font size grows with word weight, layout is a
 * simple greedy row packing so words never overlap. */

import type { WordWeight } from "./types.js";

export interface PlacedWord extends WordWeight {
  fontSize: number;
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface CloudLayout {
  width: number;
  height: number;
  placed: PlacedWord[];
}

export interface CloudOptions {
  width?: number;
  minSize?: number;
  maxSize?: number;
  gap?: number;
}

const SVG_NS = "http://www.w3.org/2000/svg";

// Box estimates without canvas text metrics; a bit generous so the
// boxes never undershoot the real glyphs.
const GLYPH_WIDTH = 0.62;
const LINE_HEIGHT = 1.25;

const CLOUD_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"];

/** Maps weights to font sizes. The size is a strictly increasing
 * function of the weight, so heavier words render strictly larger and
 * equal weights render at equal size. When every weight is the same
 * (a single word, say) everything gets maxSize. */
export function fontScale(
  weights: number[],
  minSize: number,
  maxSize: number,
): (w: number) => number {
  const lo = Math.min(...weights);
  const hi = Math.max(...weights);
  if (!(hi > lo)) {
    return () => maxSize;
  }
  return (w) => minSize + ((w - lo) / (hi - lo)) * (maxSize - minSize);
}

/** Places words heaviest first, left to right, wrapping rows at the
 * cloud width. Rows are spaced by the tallest word in the row, which
 * keeps every bounding box disjoint by construction. */
export function layoutWordCloud(words: WordWeight[], options: CloudOptions = {}): CloudLayout {
  const { width = 640, minSize = 13, maxSize = 46, gap = 6 } = options;
  if (words.length === 0) {
    return { width, height: 0, placed: [] };
  }

  const size = fontScale(
    words.map((w) => w.weight),
    minSize,
    maxSize,
  );
  const order = [...words].sort((a, b) => b.weight - a.weight || a.word.localeCompare(b.word));

  const placed: PlacedWord[] = [];
  let x = 0;
  let y = 0;
  let rowHeight = 0;
  for (const entry of order) {
    const fontSize = size(entry.weight);
    const w = Math.ceil(entry.word.length * fontSize * GLYPH_WIDTH);
    const h = Math.ceil(fontSize * LINE_HEIGHT);
    if (x > 0 && x + w > width) {
      x = 0;
      y += rowHeight + gap;
      rowHeight = 0;
    }
    placed.push({ ...entry, fontSize, x, y, width: w, height: h });
    x += w + gap;
    rowHeight = Math.max(rowHeight, h);
  }
  return { width, height: y + rowHeight, placed };
}

/** Renders `words` into `container` as an SVG cloud, replacing any
 * previous content. An empty list renders a placeholder message. */
export function renderWordCloud(
  container: Element,
  words: WordWeight[],
  options: CloudOptions = {},
): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  if (words.length === 0) {
    const p = doc.createElement("p");
    p.className = "empty-state";
    p.textContent = "no words to show";
    container.append(p);
    return;
  }

  const layout = layoutWordCloud(words, options);
  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "word-cloud");
  svg.setAttribute("viewBox", `0 0 ${layout.width} ${layout.height}`);
  layout.placed.forEach((p, i) => {
    const text = doc.createElementNS(SVG_NS, "text");
    text.textContent = p.word;
    text.setAttribute("data-word", p.word);
    text.setAttribute("x", String(p.x));
    // the layout y is the box top; the SVG y attribute is the baseline
    text.setAttribute("y", String(p.y + p.fontSize));
    text.setAttribute("font-size", String(p.fontSize));
    text.setAttribute("fill", CLOUD_COLORS[i % CLOUD_COLORS.length]);
    svg.append(text);
  });
  container.append(svg);
}
