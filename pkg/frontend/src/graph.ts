/** Bipartite topic-movie association graph: each movie links to its k
 * heaviest topics, topics are shared nodes, so movies with a common
 * dominant topic end up connected through it. */

import type { MovieTopics, TopicWeight } from "./types.js";

export interface GraphEdge {
  movie: string;
  topic: number;
  weight: number;
}

export interface TopicMovieGraph {
  movies: string[];
  topics: number[];
  edges: GraphEdge[];
}

const SVG_NS = "http://www.w3.org/2000/svg";

/** A movie's k heaviest topics. Equal weights break toward the lower
 * topic index, so a uniform distribution yields topics 0..k-1. */
export function topTopics(topics: TopicWeight[], k: number): TopicWeight[] {
  return [...topics].sort((a, b) => b.weight - a.weight || a.topic - b.topic).slice(0, k);
}

export function buildTopicMovieGraph(rows: MovieTopics[], k = 2): TopicMovieGraph {
  const edges: GraphEdge[] = [];
  for (const row of rows) {
    for (const t of topTopics(row.topics, k)) {
      edges.push({ movie: row.movie_id, topic: t.topic, weight: t.weight });
    }
  }
  const topics = [...new Set(edges.map((e) => e.topic))].sort((a, b) => a - b);
  return { movies: rows.map((r) => r.movie_id), topics, edges };
}

/** Topics adjacent to both movies, ascending. */
export function topicsLinking(graph: TopicMovieGraph, a: string, b: string): number[] {
  const ofA = new Set<number>();
  for (const e of graph.edges) {
    if (e.movie === a) {
      ofA.add(e.topic);
    }
  }
  const shared = new Set<number>();
  for (const e of graph.edges) {
    if (e.movie === b && ofA.has(e.topic)) {
      shared.add(e.topic);
    }
  }
  return [...shared].sort((x, y) => x - y);
}

/** Movies linked to `topic`, in graph (manifest) order. */
export function moviesSharingTopic(graph: TopicMovieGraph, topic: number): string[] {
  const linked = new Set(graph.edges.filter((e) => e.topic === topic).map((e) => e.movie));
  return graph.movies.filter((m) => linked.has(m));
}

export interface GraphRenderOptions {
  titleOf?: (movieId: string) => string;
  labelOf?: (topic: number) => string;
  onTopicClick?: (topic: number) => void;
}

const ROW = 28;
const PAD = 16;
const WIDTH = 520;
const LABEL_X = 8;
const TOPIC_X = WIDTH - 150;

/** Renders the graph into `container` as a two-column SVG: movies on
 * the left, topic nodes on the right, one line per association. Topic
 * nodes are clickable when a handler is given. An empty graph renders
 * an empty-state message. */
export function renderTopicMovieGraph(
  container: Element,
  graph: TopicMovieGraph,
  options: GraphRenderOptions = {},
): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  if (graph.movies.length === 0) {
    const p = doc.createElement("p");
    p.className = "empty-state";
    p.textContent = "no movies to show";
    container.append(p);
    return;
  }

  const titleOf = options.titleOf ?? ((id: string) => id);
  const labelOf = options.labelOf ?? ((t: number) => `topic ${t}`);
  const movieY = new Map(graph.movies.map((m, i) => [m, PAD + i * ROW]));
  const topicY = new Map(graph.topics.map((t, i) => [t, PAD + i * ROW]));
  const height = PAD * 2 + ROW * Math.max(graph.movies.length, graph.topics.length);

  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "topic-movie-graph");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${height}`);

  for (const e of graph.edges) {
    const line = doc.createElementNS(SVG_NS, "line");
    line.setAttribute("data-movie", e.movie);
    line.setAttribute("data-topic", String(e.topic));
    line.setAttribute("x1", String(LABEL_X + 120));
    line.setAttribute("y1", String(movieY.get(e.movie) ?? 0));
    line.setAttribute("x2", String(TOPIC_X));
    line.setAttribute("y2", String(topicY.get(e.topic) ?? 0));
    line.setAttribute("stroke", "#9aa4b2");
    line.setAttribute("stroke-width", String(1 + 3 * e.weight));
    svg.append(line);
  }

  for (const m of graph.movies) {
    const text = doc.createElementNS(SVG_NS, "text");
    text.setAttribute("class", "graph-movie");
    text.setAttribute("data-movie", m);
    text.setAttribute("x", String(LABEL_X));
    text.setAttribute("y", String((movieY.get(m) ?? 0) + 4));
    text.textContent = titleOf(m);
    svg.append(text);
  }

  for (const t of graph.topics) {
    const g = doc.createElementNS(SVG_NS, "g");
    g.setAttribute("class", "graph-topic");
    g.setAttribute("data-topic", String(t));
    const y = topicY.get(t) ?? 0;
    const dot = doc.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(TOPIC_X));
    dot.setAttribute("cy", String(y));
    dot.setAttribute("r", "6");
    const label = doc.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(TOPIC_X + 12));
    label.setAttribute("y", String(y + 4));
    label.textContent = labelOf(t);
    g.append(dot, label);
    if (options.onTopicClick !== undefined) {
      const handler = options.onTopicClick;
      g.addEventListener("click", () => handler(t));
    }
    svg.append(g);
  }

  container.append(svg);
}
