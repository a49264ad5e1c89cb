/** GraphQL-over-HTTP client: the dashboard's only backend surface. */

export interface SentimentBucket {
  bucketStart: number;
  mentionCount: number;
  meanSentiment: number;
  positiveCount: number;
  neutralCount: number;
  negativeCount: number;
}

export interface StockBar {
  stock: string;
  timestamp: number;
  open: number;
  high: number;
  low: number;
  close: number;
  volume: number;
}

export class BackendError extends Error {
  constructor(message: string, readonly code?: string) {
    super(message);
  }
}

export const SENTIMENT_SERIES_QUERY = `
query SentimentSeries($subreddit: String!, $keywords: [String!]!,
                      $bucketWidth: Int!, $from: Int!, $to: Int!) {
  sentimentSeries(subreddit: $subreddit, keywords: $keywords,
                  bucketWidth: $bucketWidth, from: $from, to: $to) {
    bucketStart mentionCount meanSentiment positiveCount neutralCount negativeCount
  }
}
`;

export const STOCK_SERIES_QUERY = `
query StockSeries($ticker: String!, $from: Int!, $to: Int!) {
  stockSeries(ticker: $ticker, from: $from, to: $to) {
    stock timestamp open high low close volume
  }
}
`;

export const TRACKED_QUERY = `
query Tracked { trackedSubreddits trackedTickers }
`;

export async function postGraphQL<T>(
  baseUrl: string,
  query: string,
  variables: Record<string, unknown>,
): Promise<T> {
  const response = await fetch(baseUrl.replace(/\/$/, '') + '/graphql', {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify({ query, variables }),
  });
  const envelope = (await response.json()) as {
    data?: T;
    errors?: Array<{ message: string; extensions?: { code?: string } }>;
  };
  if (envelope.errors && envelope.errors.length > 0) {
    const first = envelope.errors[0]!;
    throw new BackendError(first.message, first.extensions?.code);
  }
  if (!response.ok || envelope.data === undefined) {
    throw new BackendError(`backend responded with HTTP ${response.status}`);
  }
  return envelope.data;
}

export interface BackendApi {
  sentimentSeries(
    subreddit: string,
    keywords: string[],
    bucketWidth: number,
    from: number,
    to: number,
  ): Promise<SentimentBucket[]>;
  stockSeries(ticker: string, from: number, to: number): Promise<StockBar[]>;
  tracked(): Promise<{ subreddits: string[]; tickers: string[] }>;
}

export function backendApi(baseUrl: string): BackendApi {
  return {
    async sentimentSeries(subreddit, keywords, bucketWidth, from, to) {
      const data = await postGraphQL<{ sentimentSeries: SentimentBucket[] }>(
        baseUrl,
        SENTIMENT_SERIES_QUERY,
        { subreddit, keywords, bucketWidth, from, to },
      );
      return data.sentimentSeries;
    },
    async stockSeries(ticker, from, to) {
      const data = await postGraphQL<{ stockSeries: StockBar[] }>(baseUrl, STOCK_SERIES_QUERY, {
        ticker,
        from,
        to,
      });
      return data.stockSeries;
    },
    async tracked() {
      const data = await postGraphQL<{ trackedSubreddits: string[]; trackedTickers: string[] }>(
        baseUrl,
        TRACKED_QUERY,
        {},
      );
      return { subreddits: data.trackedSubreddits, tickers: data.trackedTickers };
    },
  };
}

/**
 * Serializes chart queries: at most one result is accepted at a time,
 * and any response superseded by a newer run is discarded.
 */
export class QueryRunner {
  private seq = 0;

  async run<T>(work: () => Promise<T>): Promise<T | undefined> {
    const ticket = ++this.seq;
    const result = await work();
    return ticket === this.seq ? result : undefined;
  }
}
