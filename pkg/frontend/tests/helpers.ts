/** Test backend: replays responses captured from a real `moviesim
 * serve` run over the bundled mini corpus (see scripts/refresh-fixtures.sh). */

import type { MovieTopics } from "../src/types.js";
import modalities from "./fixtures/modalities.json";
import movieTopics from "./fixtures/movie_topics.json";
import movies from "./fixtures/movies.json";
import similarServer from "./fixtures/similar_server.json";
import topics from "./fixtures/topics.json";
import topicsExport from "./fixtures/topics_export.json";

export interface ExportedTopic {
  topic_id: number;
  top_words: [string, number][];
}

export const exportedTopics = topicsExport as unknown as ExportedTopic[];
export const movieTopicRows = movieTopics as unknown as Record<string, MovieTopics>;

export function jsonResponse(data: unknown, status = 200): Response {
  return {
    ok: status < 400,
    status,
    json: async () => data,
  } as unknown as Response;
}

export interface SimilarRequest {
  movie: string;
  weights: string | null;
  n: string | null;
}

export interface FixtureServer {
  fetchFn: (url: string) => Promise<Response>;
  similarRequests: SimilarRequest[];
}

/** Routes API paths to the captured fixtures. Similarity requests are
 * recorded (raw query values) and answered with the captured m01
 * ranking; anything unknown gets the API's 404 error shape. */
export function fixtureServer(): FixtureServer {
  const similarRequests: SimilarRequest[] = [];

  const fetchFn = async (raw: string): Promise<Response> => {
    const url = new URL(raw, "http://fixture");
    const path = url.pathname;

    if (path === "/movies") {
      return jsonResponse(movies);
    }
    if (path === "/modalities") {
      return jsonResponse(modalities);
    }
    if (path === "/topics") {
      return jsonResponse(topics);
    }

    let m = path.match(/^\/movies\/([^/]+)\/topics$/);
    if (m !== null) {
      const row = movieTopicRows[m[1]];
      if (row !== undefined) {
        return jsonResponse(row);
      }
      return jsonResponse({ error: { code: 404, message: `unknown movie '${m[1]}'` } }, 404);
    }

    m = path.match(/^\/movies\/([^/]+)\/similar$/);
    if (m !== null && m[1] === similarServer.movie_id) {
      similarRequests.push({
        movie: m[1],
        weights: url.searchParams.get("weights"),
        n: url.searchParams.get("n"),
      });
      return jsonResponse(similarServer);
    }

    m = path.match(/^\/topics\/(\d+)\/words$/);
    if (m !== null) {
      const t = Number(m[1]);
      const entry = exportedTopics.find((e) => e.topic_id === t);
      if (entry !== undefined) {
        const n = Number(url.searchParams.get("n") ?? "20");
        const words = entry.top_words.slice(0, n).map(([word, weight]) => ({ word, weight }));
        return jsonResponse({ topic: t, words });
      }
    }

    return jsonResponse({ error: { code: 404, message: `no fixture for ${path}` } }, 404);
  };

  return { fetchFn, similarRequests };
}
