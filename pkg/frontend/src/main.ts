/** Application shell: movie list, per-modality weight sliders with live
 * re-ranking, topic word clouds, and the topic-movie graph, all fed by
 * the moviesim HTTP API. */

import { MovieSimApi } from "./api.js";
import { buildTopicMovieGraph, moviesSharingTopic, renderTopicMovieGraph } from "./graph.js";
import { canQuery, Reranker } from "./rerank.js";
import type { Movie, MovieTopics, TopicSummary } from "./types.js";
import { renderSimilarList, showToast } from "./views.js";
import { renderWordCloud } from "./wordcloud.js";

const TOPIC_NEIGHBORS = 2; // topics linked per movie in the graph
const DEFAULT_LIST_SIZE = 10;

const SHELL = `
  <header class="app-header">
    <h1>moviesim browser</h1>
    <p class="subtitle">topic word clouds, movie-topic associations, and
    slider-steered recommendations</p>
  </header>
  <main class="layout">
    <section class="panel">
      <h2>Movies</h2>
      <div id="topic-filter" class="filter-chip" hidden>
        <span id="topic-filter-label"></span>
        <button id="clear-filter" type="button">show all</button>
      </div>
      <ul id="movie-list" class="movie-list"></ul>
    </section>
    <section class="panel">
      <h2>Similar movies</h2>
      <div id="sliders" class="sliders"></div>
      <label class="list-size">list size
        <input id="list-size" type="number" min="1" step="1" value="${DEFAULT_LIST_SIZE}">
      </label>
      <p id="weights-note" class="weights-note"></p>
      <div id="similar"></div>
    </section>
    <section class="panel">
      <h2>Topics</h2>
      <ul id="topic-list" class="topic-list"></ul>
      <div id="cloud"></div>
    </section>
    <section class="panel panel-wide">
      <h2>Topic-movie graph</h2>
      <div id="graph"></div>
    </section>
  </main>
  <div id="toasts" class="toasts"></div>
`;

interface ViewState {
  movieId: string | null;
  topicId: number | null;
  sliders: Record<string, number>;
  n: number;
}

async function orEmpty<T>(promise: Promise<T>, fallback: T): Promise<T> {
  try {
    return await promise;
  } catch {
    return fallback;
  }
}

export async function initApp(root: HTMLElement, api: MovieSimApi): Promise<void> {
  root.innerHTML = SHELL;
  const el = <T extends Element>(selector: string): T => {
    const found = root.querySelector<T>(selector);
    if (found === null) {
      throw new Error(`missing element ${selector}`);
    }
    return found;
  };

  const movieList = el<HTMLUListElement>("#movie-list");
  const slidersBox = el<HTMLDivElement>("#sliders");
  const listSize = el<HTMLInputElement>("#list-size");
  const weightsNote = el<HTMLParagraphElement>("#weights-note");
  const similarBox = el<HTMLDivElement>("#similar");
  const topicList = el<HTMLUListElement>("#topic-list");
  const cloudBox = el<HTMLDivElement>("#cloud");
  const graphBox = el<HTMLDivElement>("#graph");
  const toasts = el<HTMLDivElement>("#toasts");
  const filterChip = el<HTMLDivElement>("#topic-filter");
  const filterLabel = el<HTMLSpanElement>("#topic-filter-label");

  const [movies, topicSummaries, modalities] = await Promise.all([
    api.movies(),
    orEmpty<TopicSummary[]>(api.topics(), []),
    api.modalities(),
  ]);
  const titles = new Map(movies.map((m) => [m.id, m.title]));
  const topicRows = await orEmpty<MovieTopics[]>(
    Promise.all(movies.map((m) => api.movieTopics(m.id))),
    [],
  );
  const graph = buildTopicMovieGraph(topicRows, TOPIC_NEIGHBORS);

  const stored = modalities.fusion_weights;
  const names = modalities.modalities.map((m) => m.name);
  const state: ViewState = {
    movieId: null,
    topicId: null,
    sliders: Object.fromEntries(names.map((name) => [name, stored?.[name] ?? 1])),
    n: DEFAULT_LIST_SIZE,
  };

  const reranker = new Reranker(api, {
    onList: (resp) => {
      renderSimilarList(similarBox, resp);
      const parts = Object.entries(resp.weights).map(([k, v]) => `${k} ${(100 * v).toFixed(0)}%`);
      weightsNote.textContent = `server weighting: ${parts.join(", ")}`;
    },
    onError: (err) => showToast(toasts, err.message),
  });

  const rerank = (): void => {
    if (state.movieId === null) {
      return;
    }
    if (!canQuery(state.sliders)) {
      weightsNote.textContent = "raise a slider above zero to re-rank";
      return;
    }
    reranker.request(state.movieId, state.sliders, state.n);
  };

  const selectMovie = (id: string): void => {
    state.movieId = id;
    for (const item of movieList.querySelectorAll("li")) {
      item.classList.toggle("selected", item.getAttribute("data-movie-id") === id);
    }
    rerank();
  };

  for (const movie of movies) {
    const li = root.ownerDocument.createElement("li");
    li.setAttribute("data-movie-id", movie.id);
    li.textContent = `${movie.title} (${movie.genres.join(", ")})`;
    li.addEventListener("click", () => selectMovie(movie.id));
    movieList.append(li);
  }

  for (const info of modalities.modalities) {
    const row = root.ownerDocument.createElement("label");
    row.className = "slider-row";
    const name = root.ownerDocument.createElement("span");
    name.textContent = info.name;
    if (info.flagged.length > 0) {
      name.textContent += ` (${info.flagged.length} flagged)`;
      row.title = `no ${info.name} signal for: ${info.flagged.join(", ")}`;
    }
    const input = root.ownerDocument.createElement("input");
    input.type = "range";
    input.min = "0";
    input.max = "2";
    input.step = "0.05";
    input.value = String(state.sliders[info.name]);
    input.setAttribute("data-modality", info.name);
    const value = root.ownerDocument.createElement("output");
    value.textContent = input.value;
    input.addEventListener("input", () => {
      state.sliders[info.name] = Number(input.value);
      value.textContent = input.value;
      rerank();
    });
    row.append(name, input, value);
    slidersBox.append(row);
  }

  listSize.addEventListener("change", () => {
    const n = Math.floor(Number(listSize.value));
    state.n = Number.isFinite(n) && n >= 1 ? n : DEFAULT_LIST_SIZE;
    listSize.value = String(state.n);
    rerank();
  });

  const previews = new Map(topicSummaries.map((t) => [t.topic, t.preview.join(" ")]));
  const topicLabel = (t: number): string => `#${t} ${previews.get(t) ?? ""}`.trim();

  const applyTopicFilter = (topic: number | null): void => {
    const keep = topic === null ? null : new Set(moviesSharingTopic(graph, topic));
    for (const item of movieList.querySelectorAll("li")) {
      const id = item.getAttribute("data-movie-id") ?? "";
      (item as HTMLElement).hidden = keep !== null && !keep.has(id);
    }
    filterChip.hidden = topic === null;
    if (topic !== null) {
      filterLabel.textContent = `movies on ${topicLabel(topic)}`;
    }
  };

  const selectTopic = (topic: number): void => {
    state.topicId = topic;
    for (const item of topicList.querySelectorAll("li")) {
      item.classList.toggle("selected", item.getAttribute("data-topic") === String(topic));
    }
    applyTopicFilter(topic);
    api
      .topicWords(topic)
      .then((words) => renderWordCloud(cloudBox, words.words))
      .catch((err: Error) => showToast(toasts, err.message));
  };

  el<HTMLButtonElement>("#clear-filter").addEventListener("click", () => applyTopicFilter(null));

  for (const summary of topicSummaries) {
    const li = root.ownerDocument.createElement("li");
    li.setAttribute("data-topic", String(summary.topic));
    li.textContent = `${topicLabel(summary.topic)} (${(100 * summary.share).toFixed(1)}%)`;
    li.addEventListener("click", () => selectTopic(summary.topic));
    topicList.append(li);
  }
  if (topicSummaries.length === 0) {
    const li = root.ownerDocument.createElement("li");
    li.className = "empty-state";
    li.textContent = "no topic model on the server";
    topicList.append(li);
  }

  renderTopicMovieGraph(graphBox, graph, {
    titleOf: (id) => titles.get(id) ?? id,
    labelOf: topicLabel,
    onTopicClick: selectTopic,
  });

  if (movies.length > 0) {
    selectMovie(movies[0].id);
  }
}

const root = typeof document === "undefined" ? null : document.getElementById("app");
if (root !== null) {
  initApp(root, new MovieSimApi()).catch((err: Error) => {
    root.textContent = `failed to start: ${err.message}`;
  });
}
