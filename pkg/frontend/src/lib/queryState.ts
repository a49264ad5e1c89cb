/**
 * The full dashboard query lives in the page URL so any view is
 * shareable and bookmarkable. Serialization is canonical: parse and
 * serialize round-trip losslessly.
 */

export interface QueryState {
  subreddit: string;
  keywords: string[];
  ticker: string;
  from: number; // epoch seconds, inclusive
  to: number; // epoch seconds, exclusive
  bucketWidth: number; // seconds
}

const DAY = 86_400;

export function defaultQueryState(nowSeconds = Math.floor(Date.now() / 1000)): QueryState {
  const today = nowSeconds - (nowSeconds % DAY);
  return {
    subreddit: 'wallstreetbets',
    keywords: [],
    ticker: 'GME',
    from: today - 90 * DAY,
    to: today + DAY,
    bucketWidth: DAY,
  };
}

export function serializeQueryState(state: QueryState): string {
  const params = new URLSearchParams();
  params.set('subreddit', state.subreddit);
  params.set('ticker', state.ticker);
  params.set('from', String(state.from));
  params.set('to', String(state.to));
  params.set('bucketWidth', String(state.bucketWidth));
  for (const keyword of state.keywords) {
    params.append('kw', keyword);
  }
  return '?' + params.toString();
}

export function parseQueryState(search: string, fallback?: QueryState): QueryState {
  const base = fallback ?? defaultQueryState();
  const params = new URLSearchParams(search.startsWith('?') ? search.slice(1) : search);
  const integer = (name: string, dflt: number): number => {
    const raw = params.get(name);
    if (raw === null) return dflt;
    const value = Number(raw);
    return Number.isSafeInteger(value) ? value : dflt;
  };
  return {
    subreddit: params.get('subreddit') ?? base.subreddit,
    keywords: params.getAll('kw'),
    ticker: params.get('ticker') ?? base.ticker,
    from: integer('from', base.from),
    to: integer('to', base.to),
    bucketWidth: integer('bucketWidth', base.bucketWidth),
  };
}

/** Everything preventing this state from being sent to the backend. */
export function validateQueryState(state: QueryState): string[] {
  const problems: string[] = [];
  if (!state.subreddit.trim()) problems.push('subreddit must not be empty');
  if (!state.ticker.trim()) problems.push('ticker must not be empty');
  if (!(state.from < state.to)) problems.push('date range requires from < to');
  if (!(state.bucketWidth > 0)) problems.push('bucket width must be positive');
  for (const keyword of state.keywords) {
    if (!keyword.trim()) problems.push('keywords must not be blank');
  }
  return problems;
}

// --- pure state transitions used by the controls -------------------------

export function withKeywordAdded(state: QueryState, keyword: string): QueryState {
  const trimmed = keyword.trim();
  if (!trimmed || state.keywords.includes(trimmed)) return state;
  return { ...state, keywords: [...state.keywords, trimmed] };
}

export function withKeywordRemoved(state: QueryState, keyword: string): QueryState {
  return { ...state, keywords: state.keywords.filter((k) => k !== keyword) };
}

export function withSubreddit(state: QueryState, subreddit: string): QueryState {
  return { ...state, subreddit };
}

export function withTicker(state: QueryState, ticker: string): QueryState {
  return { ...state, ticker };
}

export function withRange(state: QueryState, from: number, to: number): QueryState {
  return { ...state, from, to };
}

export function withBucketWidth(state: QueryState, bucketWidth: number): QueryState {
  return { ...state, bucketWidth };
}
