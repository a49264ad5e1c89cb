/**
 * In-process fixture backend for tests: speaks the same GraphQL
 * envelope and query semantics as the real service, fed from fixed
 * comment and bar fixtures.
 */

import { createServer, type Server } from 'node:http';
import type { AddressInfo } from 'node:net';
import type { SentimentBucket, StockBar } from '../src/lib/graphqlClient.js';

export interface FixtureComment {
  subreddit: string;
  text: string;
  timestamp: number;
  sentiment: number;
}

const NEUTRAL_BAND = 0.05;

function matchesAll(text: string, keywords: string[]): boolean {
  return keywords.every((kw) => {
    const escaped = kw.replace(/[.*+?^${}()|[\]\\]/g, '\\$&');
    return new RegExp(`(?<!\\w)${escaped}(?!\\w)`, 'iu').test(text);
  });
}

export function aggregateFixture(
  comments: FixtureComment[],
  subreddit: string,
  keywords: string[],
  bucketWidth: number,
  from: number,
  to: number,
): SentimentBucket[] {
  const n = Math.ceil((to - from) / bucketWidth);
  const buckets: Array<SentimentBucket & { sum: number }> = [];
  for (let k = 0; k < n; k += 1) {
    buckets.push({
      bucketStart: from + k * bucketWidth,
      mentionCount: 0,
      meanSentiment: 0,
      positiveCount: 0,
      neutralCount: 0,
      negativeCount: 0,
      sum: 0,
    });
  }
  for (const comment of comments) {
    if (comment.subreddit !== subreddit) continue;
    if (comment.timestamp < from || comment.timestamp >= to) continue;
    if (!matchesAll(comment.text, keywords)) continue;
    const bucket = buckets[Math.floor((comment.timestamp - from) / bucketWidth)]!;
    bucket.mentionCount += 1;
    bucket.sum += comment.sentiment;
    if (comment.sentiment < -NEUTRAL_BAND) bucket.negativeCount += 1;
    else if (comment.sentiment > NEUTRAL_BAND) bucket.positiveCount += 1;
    else bucket.neutralCount += 1;
  }
  return buckets.map(({ sum, ...bucket }) => ({
    ...bucket,
    meanSentiment: bucket.mentionCount > 0 ? sum / bucket.mentionCount : 0,
  }));
}

export interface FixtureBackend {
  url: string;
  close(): Promise<void>;
  requestCount(): number;
}

export async function startFixtureBackend(
  comments: FixtureComment[],
  bars: StockBar[],
  tracked = { subreddits: ['wallstreetbets'], tickers: ['GME'] },
): Promise<FixtureBackend> {
  let requests = 0;
  const server: Server = createServer((req, res) => {
    const chunks: Buffer[] = [];
    req.on('data', (chunk) => chunks.push(chunk as Buffer));
    req.on('end', () => {
      requests += 1;
      const body = JSON.parse(Buffer.concat(chunks).toString('utf-8')) as {
        query: string;
        variables?: Record<string, unknown>;
      };
      const vars = body.variables ?? {};
      const data: Record<string, unknown> = {};
      if (body.query.includes('sentimentSeries')) {
        data.sentimentSeries = aggregateFixture(
          comments,
          vars.subreddit as string,
          (vars.keywords as string[]) ?? [],
          vars.bucketWidth as number,
          vars.from as number,
          vars.to as number,
        );
      }
      if (body.query.includes('stockSeries')) {
        data.stockSeries = bars
          .filter(
            (b) =>
              b.stock === vars.ticker &&
              b.timestamp >= (vars.from as number) &&
              b.timestamp < (vars.to as number),
          )
          .sort((a, b) => a.timestamp - b.timestamp);
      }
      if (body.query.includes('trackedSubreddits')) {
        data.trackedSubreddits = tracked.subreddits;
        data.trackedTickers = tracked.tickers;
      }
      res.writeHead(200, { 'Content-Type': 'application/json' });
      res.end(JSON.stringify({ data }));
    });
  });
  await new Promise<void>((resolve) => server.listen(0, '127.0.0.1', resolve));
  const { port } = server.address() as AddressInfo;
  return {
    url: `http://127.0.0.1:${port}`,
    close: () => new Promise((resolve) => server.close(() => resolve())),
    requestCount: () => requests,
  };
}
