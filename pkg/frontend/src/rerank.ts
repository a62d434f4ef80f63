/** Slider-driven live re-ranking. Slider changes debounce into one
 * similarity request; responses that arrive after a newer request has
 * gone out are dropped (latest wins), and errors leave the previous
 * list in place. */

import type { MovieSimApi } from "./api.js";
import type { SimilarResponse } from "./types.js";

/** The positive sliders only; what actually goes to the server. */
export function activeWeights(sliders: Record<string, number>): Record<string, number> {
  const out: Record<string, number> = {};
  for (const [name, value] of Object.entries(sliders)) {
    if (value > 0) {
      out[name] = value;
    }
  }
  return out;
}

/** A query may only be issued once at least one slider is positive. */
export function canQuery(sliders: Record<string, number>): boolean {
  return Object.values(sliders).some((v) => v > 0);
}

export interface RerankEvents {
  onList: (resp: SimilarResponse) => void;
  onError: (err: Error) => void;
}

type SimilarSource = Pick<MovieSimApi, "similar">;

export class Reranker {
  private seq = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly api: SimilarSource,
    private readonly events: RerankEvents,
    private readonly debounceMs = 150,
  ) {}

  /** Schedules a re-rank for the given view state. Calls inside the
   * debounce window collapse into one request. With every slider at
   * zero nothing is sent and any pending request is cancelled. */
  request(movieId: string, sliders: Record<string, number>, n: number): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (!canQuery(sliders)) {
      return;
    }
    const weights = activeWeights(sliders);
    const size = Math.max(1, Math.floor(n));
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(movieId, weights, size);
    }, this.debounceMs);
  }

  private async fire(movieId: string, weights: Record<string, number>, n: number): Promise<void> {
    const ticket = ++this.seq;
    try {
      const resp = await this.api.similar(movieId, weights, n);
      if (ticket === this.seq) {
        this.events.onList(resp);
      }
    } catch (err) {
      if (ticket === this.seq) {
        this.events.onError(err instanceof Error ? err : new Error(String(err)));
      }
    }
  }
}
