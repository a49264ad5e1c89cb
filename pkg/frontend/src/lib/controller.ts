/**
 * The dashboard's steering loop: control edits update the query state,
 * valid states re-run the backend queries (debounced), and stale
 * responses are dropped. A backend failure keeps the previous data on
 * screen and raises an error banner instead.
 */

import type { BackendApi, SentimentBucket, StockBar } from './graphqlClient.js';
import { QueryRunner } from './graphqlClient.js';
import { debounce } from './debounce.js';
import type { QueryState } from './queryState.js';
import {
  validateQueryState,
  withBucketWidth,
  withKeywordAdded,
  withKeywordRemoved,
  withRange,
  withSubreddit,
  withTicker,
} from './queryState.js';

export interface DashboardData {
  buckets: SentimentBucket[];
  bars: StockBar[];
}

export interface DashboardView {
  state: QueryState;
  data: DashboardData | null;
  error: string | null;
  validation: string[];
  loading: boolean;
}

export const QUERY_DEBOUNCE_MS = 300;

export class DashboardController {
  private view: DashboardView;
  private readonly runner = new QueryRunner();
  private readonly scheduleQuery: () => void;

  constructor(
    private readonly api: BackendApi,
    initialState: QueryState,
    private readonly onChange: (view: DashboardView) => void,
    debounceMs: number = QUERY_DEBOUNCE_MS,
  ) {
    this.view = {
      state: initialState,
      data: null,
      error: null,
      validation: validateQueryState(initialState),
      loading: false,
    };
    this.scheduleQuery = debounce(() => void this.runQuery(), debounceMs);
  }

  current(): DashboardView {
    return this.view;
  }

  /** Immediate, non-debounced query; used on first load. */
  async refresh(): Promise<void> {
    await this.runQuery();
  }

  setSubreddit(subreddit: string): void {
    this.update(withSubreddit(this.view.state, subreddit));
  }

  setTicker(ticker: string): void {
    this.update(withTicker(this.view.state, ticker));
  }

  addKeyword(keyword: string): void {
    this.update(withKeywordAdded(this.view.state, keyword));
  }

  removeKeyword(keyword: string): void {
    this.update(withKeywordRemoved(this.view.state, keyword));
  }

  setRange(from: number, to: number): void {
    this.update(withRange(this.view.state, from, to));
  }

  setBucketWidth(bucketWidth: number): void {
    this.update(withBucketWidth(this.view.state, bucketWidth));
  }

  private update(state: QueryState): void {
    if (state === this.view.state) return;
    const validation = validateQueryState(state);
    this.view = { ...this.view, state, validation };
    this.emit();
    if (validation.length === 0) {
      this.scheduleQuery(); // invalid states never reach the backend
    }
  }

  private async runQuery(): Promise<void> {
    const { state, validation } = this.view;
    if (validation.length > 0) return;
    this.view = { ...this.view, loading: true };
    this.emit();
    try {
      const result = await this.runner.run(async () => {
        const [buckets, bars] = await Promise.all([
          this.api.sentimentSeries(
            state.subreddit,
            state.keywords,
            state.bucketWidth,
            state.from,
            state.to,
          ),
          this.api.stockSeries(state.ticker, state.from, state.to),
        ]);
        return { buckets, bars };
      });
      if (result === undefined) return; // superseded by a newer query
      this.view = { ...this.view, data: result, error: null, loading: false };
    } catch (err) {
      // keep the previous charts, surface the failure
      const message = err instanceof Error ? err.message : String(err);
      this.view = { ...this.view, error: message, loading: false };
    }
    this.emit();
  }

  private emit(): void {
    this.onChange(this.view);
  }
}
