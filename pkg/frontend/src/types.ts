/** Response shapes of the moviesim HTTP API, one interface per endpoint
 * payload. Field names mirror the JSON exactly. */

export interface Movie {
  id: string;
  title: string;
  cast: string[];
  directors: string[];
  genres: string[];
}

export interface TopicWeight {
  topic: number;
  weight: number;
}

/** GET /movies/{id}/topics: heaviest topic first, ties by topic index. */
export interface MovieTopics {
  movie_id: string;
  topics: TopicWeight[];
}

export interface SimilarEntry {
  movie_id: string;
  title: string;
  score: number;
}

/** GET /movies/{id}/similar: `weights` come back normalized, `similar`
 * is ranked best first and must be displayed in exactly this order. */
export interface SimilarResponse {
  movie_id: string;
  weights: Record<string, number>;
  flagged: boolean;
  similar: SimilarEntry[];
}

/** GET /topics list entry: corpus share and a three-word preview. */
export interface TopicSummary {
  topic: number;
  share: number;
  preview: string[];
}

export interface WordWeight {
  word: string;
  weight: number;
}

/** GET /topics/{id}/words: heaviest word first. */
export interface TopicWords {
  topic: number;
  words: WordWeight[];
}

export interface ModalityInfo {
  name: string;
  flagged: string[];
}

/** GET /modalities: which similarity matrices the server holds, plus
 * the stored fusion weights when a weight search has run. */
export interface ModalitiesResponse {
  modalities: ModalityInfo[];
  fusion_weights: Record<string, number> | null;
}
