/** System-level checks of the three UI deliverables, driven end to end
 * by fixtures captured from the real backend over the bundled corpus:
 * the word cloud shows every exported word with sizes monotone in
 * weight, the slider-driven list reproduces the server ranking that a
 * matrix-level oracle also produces, and the topic-movie graph
 * connects movies through their shared dominant topic. */

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { MovieSimApi } from "../src/api.js";
import { buildTopicMovieGraph, renderTopicMovieGraph, topicsLinking, topTopics } from "../src/graph.js";
import { initApp } from "../src/main.js";
import { listedMovieIds } from "../src/views.js";
import { layoutWordCloud, renderWordCloud } from "../src/wordcloud.js";
import similarOracle from "./fixtures/similar_oracle.json";
import similarServer from "./fixtures/similar_server.json";
import { exportedTopics, fixtureServer, movieTopicRows } from "./helpers.js";

describe("word cloud over the exported topics", () => {
  it("renders every exported word of every topic", () => {
    for (const topic of exportedTopics) {
      const words = topic.top_words.map(([word, weight]) => ({ word, weight }));
      const host = document.createElement("div");
      renderWordCloud(host, words);
      const rendered = new Set(
        [...host.querySelectorAll("text[data-word]")].map((n) => n.getAttribute("data-word")),
      );
      expect(rendered.size).toBe(words.length);
      for (const w of words) {
        expect(rendered.has(w.word)).toBe(true);
      }
    }
  });

  it("sizes words monotone in their weight", () => {
    for (const topic of exportedTopics) {
      const words = topic.top_words.map(([word, weight]) => ({ word, weight }));
      const host = document.createElement("div");
      renderWordCloud(host, words);
      const size = new Map(
        [...host.querySelectorAll("text[data-word]")].map((n) => [
          n.getAttribute("data-word"),
          Number(n.getAttribute("font-size")),
        ]),
      );
      for (const a of words) {
        for (const b of words) {
          if (a.weight > b.weight) {
            expect(size.get(a.word)!).toBeGreaterThan(size.get(b.word)!);
          } else if (a.weight === b.weight) {
            expect(size.get(a.word)).toBe(size.get(b.word));
          }
        }
      }
    }
  });

  it("lays out every topic without overlapping boxes", () => {
    for (const topic of exportedTopics) {
      const words = topic.top_words.map(([word, weight]) => ({ word, weight }));
      const placed = layoutWordCloud(words).placed;
      for (let i = 0; i < placed.length; i++) {
        for (let j = i + 1; j < placed.length; j++) {
          const a = placed[i];
          const b = placed[j];
          const apart =
            a.x + a.width <= b.x ||
            b.x + b.width <= a.x ||
            a.y + a.height <= b.y ||
            b.y + b.height <= a.y;
          expect(apart).toBe(true);
        }
      }
    }
  });
});

describe("slider-driven re-ranking", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });

  afterEach(() => {
    document.body.replaceChildren();
    vi.useRealTimers();
  });

  it("displays the server ranking, which matches the fused-matrix oracle", async () => {
    const fx = fixtureServer();
    const root = document.createElement("div");
    document.body.append(root);
    await initApp(root, new MovieSimApi("", fx.fetchFn));
    await vi.advanceTimersByTimeAsync(300);

    // drive the sliders exactly like a user would
    const drive = (modality: string, value: number): void => {
      const input = root.querySelector<HTMLInputElement>(`input[data-modality='${modality}']`);
      if (input === null) {
        throw new Error(`no slider for ${modality}`);
      }
      input.value = String(value);
      input.dispatchEvent(new Event("input"));
    };
    drive("tfidf", 0);
    drive("lda", 2);
    drive("metadata", 1);
    const sizeInput = root.querySelector<HTMLInputElement>("#list-size");
    sizeInput!.value = "11";
    sizeInput!.dispatchEvent(new Event("change"));
    await vi.advanceTimersByTimeAsync(300);

    // the weights went out raw; the server normalizes
    expect(fx.similarRequests.at(-1)).toEqual({ movie: "m01", weights: "lda:2,metadata:1", n: "11" });

    // displayed order is the server's response order, untouched
    const displayed = listedMovieIds(root.querySelector("#similar")!);
    expect(displayed).toEqual(similarServer.similar.map((e) => e.movie_id));

    // and the server response agrees with the ranking computed straight
    // from the fused matrix the CLI stores for the same weights
    expect(similarServer.similar.map((e) => e.movie_id)).toEqual(
      similarOracle.similar.map((e) => e.movie_id),
    );
    for (let i = 0; i < similarOracle.similar.length; i++) {
      expect(similarServer.similar[i].score).toBe(similarOracle.similar[i].score);
    }
  });
});

describe("topic-movie graph", () => {
  it("links two corpus movies through their shared dominant topic", () => {
    const rows = Object.values(movieTopicRows);
    const graph = buildTopicMovieGraph(rows, 2);

    const dominant = (id: string): number => topTopics(movieTopicRows[id].topics, 1)[0].topic;
    const t = dominant("m01");
    expect(dominant("m02")).toBe(t);
    expect(topicsLinking(graph, "m01", "m02")).toContain(t);

    const host = document.createElement("div");
    renderTopicMovieGraph(host, graph);
    expect(host.querySelector(`line[data-movie='m01'][data-topic='${t}']`)).not.toBeNull();
    expect(host.querySelector(`line[data-movie='m02'][data-topic='${t}']`)).not.toBeNull();
    expect(host.querySelector(`g.graph-topic[data-topic='${t}']`)).not.toBeNull();
  });
});
