import { describe, expect, it } from "vitest";
import type { WordWeight } from "../src/types.js";
import { fontScale, layoutWordCloud, renderWordCloud } from "../src/wordcloud.js";
import type { PlacedWord } from "../src/wordcloud.js";

function disjoint(a: PlacedWord, b: PlacedWord): boolean {
  return (
    a.x + a.width <= b.x || b.x + b.width <= a.x || a.y + a.height <= b.y || b.y + b.height <= a.y
  );
}

const WORDS: WordWeight[] = [
  { word: "harbor", weight: 0.3 },
  { word: "lantern", weight: 0.2 },
  { word: "smuggler", weight: 0.2 },
  { word: "tide", weight: 0.1 },
  { word: "fog", weight: 0.05 },
];

describe("fontScale", () => {
  it("maps a heavier weight to a strictly larger size", () => {
    const size = fontScale([0.2, 0.1], 10, 40);
    expect(size(0.2)).toBeGreaterThan(size(0.1));
    expect(size(0.2)).toBe(40);
    expect(size(0.1)).toBe(10);
  });

  it("is strictly increasing between the extremes", () => {
    const size = fontScale([0.1, 0.15, 0.2, 0.4], 10, 40);
    const sizes = [0.1, 0.15, 0.2, 0.4].map(size);
    for (let i = 1; i < sizes.length; i++) {
      expect(sizes[i]).toBeGreaterThan(sizes[i - 1]);
    }
  });

  it("gives equal weights equal sizes", () => {
    const size = fontScale([0.1, 0.2, 0.2], 10, 40);
    expect(size(0.2)).toBe(size(0.2));
    expect(size(0.1)).toBeLessThan(size(0.2));
  });

  it("uses the maximum size when every weight is the same", () => {
    expect(fontScale([0.5], 10, 40)(0.5)).toBe(40);
    expect(fontScale([0.3, 0.3], 10, 40)(0.3)).toBe(40);
  });
});

describe("layoutWordCloud", () => {
  it("returns an empty layout for no words", () => {
    const layout = layoutWordCloud([]);
    expect(layout.placed).toEqual([]);
    expect(layout.height).toBe(0);
  });

  it("places the heaviest word first", () => {
    const layout = layoutWordCloud(WORDS);
    expect(layout.placed[0].word).toBe("harbor");
    expect(layout.placed[0]).toMatchObject({ x: 0, y: 0 });
  });

  it("keeps every box inside the wrap width unless a word is alone on its row", () => {
    const layout = layoutWordCloud(WORDS, { width: 120 });
    for (const p of layout.placed) {
      expect(p.x === 0 || p.x + p.width <= 120).toBe(true);
    }
  });

  it("never overlaps any two boxes", () => {
    const layout = layoutWordCloud(WORDS, { width: 160 });
    const placed = layout.placed;
    for (let i = 0; i < placed.length; i++) {
      for (let j = i + 1; j < placed.length; j++) {
        expect(disjoint(placed[i], placed[j])).toBe(true);
      }
    }
  });

  it("is deterministic", () => {
    expect(layoutWordCloud(WORDS)).toEqual(layoutWordCloud(WORDS));
  });
});

describe("renderWordCloud", () => {
  it("renders a placeholder for an empty word list", () => {
    const host = document.createElement("div");
    renderWordCloud(host, []);
    const empty = host.querySelector("p.empty-state");
    expect(empty).not.toBeNull();
    expect(empty?.textContent).toMatch(/no words/);
    expect(host.querySelector("svg")).toBeNull();
  });

  it("renders one text node per word with its font size", () => {
    const host = document.createElement("div");
    renderWordCloud(host, WORDS);
    const nodes = [...host.querySelectorAll("text[data-word]")];
    expect(nodes.map((n) => n.getAttribute("data-word")).sort()).toEqual(
      WORDS.map((w) => w.word).sort(),
    );
    for (const node of nodes) {
      expect(Number(node.getAttribute("font-size"))).toBeGreaterThan(0);
    }
  });

  it("replaces earlier content on re-render", () => {
    const host = document.createElement("div");
    renderWordCloud(host, WORDS);
    renderWordCloud(host, WORDS.slice(0, 2));
    expect(host.querySelectorAll("svg").length).toBe(1);
    expect(host.querySelectorAll("text[data-word]").length).toBe(2);
  });

  it("renders a single word at the maximum size", () => {
    const host = document.createElement("div");
    renderWordCloud(host, [{ word: "alone", weight: 0.4 }], { maxSize: 46 });
    const node = host.querySelector("text[data-word='alone']");
    expect(Number(node?.getAttribute("font-size"))).toBe(46);
  });
});
