/** Small DOM renderers shared by the app shell and its tests. */

import type { SimilarResponse } from "./types.js";

/** Renders the ranked list exactly in response order. The UI never
 * reorders or filters what the server returned; the order on screen is
 * the server's ranking, nothing else. */
export function renderSimilarList(container: Element, resp: SimilarResponse): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  const ol = doc.createElement("ol");
  ol.className = "similar-list";
  for (const entry of resp.similar) {
    const li = doc.createElement("li");
    li.setAttribute("data-movie-id", entry.movie_id);
    const title = doc.createElement("span");
    title.className = "similar-title";
    title.textContent = entry.title;
    const score = doc.createElement("span");
    score.className = "similar-score";
    score.textContent = entry.score.toFixed(4);
    li.append(title, score);
    ol.append(li);
  }
  container.append(ol);
}

/** The movie ids currently displayed, top first. */
export function listedMovieIds(container: Element): string[] {
  return [...container.querySelectorAll("[data-movie-id]")].map(
    (el) => el.getAttribute("data-movie-id") ?? "",
  );
}

/** Appends a transient, non-blocking error message. */
export function showToast(container: Element, message: string, ttlMs = 4000): void {
  const doc = container.ownerDocument;
  const div = doc.createElement("div");
  div.className = "toast";
  div.textContent = message;
  container.append(div);
  setTimeout(() => div.remove(), ttlMs);
}
