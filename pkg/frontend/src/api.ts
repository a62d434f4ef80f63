/** Thin typed client for the moviesim HTTP API. */

import type {
  ModalitiesResponse,
  Movie,
  MovieTopics,
  SimilarResponse,
  TopicSummary,
  TopicWords,
} from "./types.js";

/** A non-2xx response, carrying the server's error message. */
export class ApiError extends Error {
  constructor(
    readonly code: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Serializes slider weights for the `weights` query parameter. Zero
 * sliders are dropped; values are sent raw, normalization is the
 * server's job. */
export function weightsParam(weights: Record<string, number>): string {
  return Object.entries(weights)
    .filter(([, w]) => w > 0)
    .map(([name, w]) => `${name}:${w}`)
    .join(",");
}

type FetchLike = (url: string) => Promise<Response>;

export class MovieSimApi {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string, params?: Record<string, string>): Promise<T> {
    let url = this.base + path;
    if (params !== undefined && Object.keys(params).length > 0) {
      url += "?" + new URLSearchParams(params).toString();
    }
    const resp = await this.fetchFn(url);
    const body = await resp.json().catch(() => null);
    if (!resp.ok) {
      const message =
        body !== null && typeof body.error?.message === "string"
          ? body.error.message
          : `request failed with status ${resp.status}`;
      throw new ApiError(resp.status, message);
    }
    return body as T;
  }

  movies(): Promise<Movie[]> {
    return this.get("/movies");
  }

  movieTopics(id: string): Promise<MovieTopics> {
    return this.get(`/movies/${encodeURIComponent(id)}/topics`);
  }

  similar(id: string, weights: Record<string, number>, n?: number): Promise<SimilarResponse> {
    const params: Record<string, string> = { weights: weightsParam(weights) };
    if (n !== undefined) {
      params.n = String(n);
    }
    return this.get(`/movies/${encodeURIComponent(id)}/similar`, params);
  }

  topics(): Promise<TopicSummary[]> {
    return this.get("/topics");
  }

  topicWords(topic: number, n = 20): Promise<TopicWords> {
    return this.get(`/topics/${topic}/words`, { n: String(n) });
  }

  modalities(): Promise<ModalitiesResponse> {
    return this.get("/modalities");
  }
}
