/**
 * SVG chart builders. Pure functions from GraphQL payloads to markup:
 * the numbers plotted are exactly the response values (scaling moves
 * pixels, never data), and every datum is also embedded as a
 * `data-value` attribute so tests and tooling can read back what was
 * rendered.
 */

import type { SentimentBucket, StockBar } from './graphqlClient.js';

export interface ChartModel {
  svg: string;
  values: number[];
}

export interface TimeDomain {
  t0: number;
  t1: number;
}

const WIDTH = 760;
const HEIGHT = 150;
const PAD_X = 48;
const PAD_Y = 12;

export function sharedTimeDomain(buckets: SentimentBucket[], bars: StockBar[]): TimeDomain {
  const times = [
    ...buckets.map((b) => b.bucketStart),
    ...bars.map((b) => b.timestamp),
  ];
  if (times.length === 0) return { t0: 0, t1: 1 };
  let t0 = Math.min(...times);
  let t1 = Math.max(...times);
  if (t0 === t1) {
    t0 -= 1;
    t1 += 1;
  }
  return { t0, t1 };
}

function xScale(domain: TimeDomain): (t: number) => number {
  const span = domain.t1 - domain.t0;
  return (t) => PAD_X + ((t - domain.t0) / span) * (WIDTH - 2 * PAD_X);
}

function fmt(value: number): string {
  return String(Math.round(value * 100) / 100);
}

function svgShell(body: string, cssClass: string, title: string): string {
  return (
    `<svg class="chart ${cssClass}" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
    `role="img" aria-label="${title}" preserveAspectRatio="none">` +
    `<rect class="plot-bg" x="${PAD_X}" y="${PAD_Y}" width="${WIDTH - 2 * PAD_X}" ` +
    `height="${HEIGHT - 2 * PAD_Y}"></rect>${body}</svg>`
  );
}

/** Mention counts as a bar series. */
export function mentionsBars(buckets: SentimentBucket[], domain?: TimeDomain): ChartModel {
  const dom = domain ?? sharedTimeDomain(buckets, []);
  const values = buckets.map((b) => b.mentionCount);
  const max = Math.max(1, ...values);
  const x = xScale(dom);
  const barWidth = buckets.length > 0 ? Math.max(1, (WIDTH - 2 * PAD_X) / buckets.length - 2) : 1;
  const body = buckets
    .map((b) => {
      const h = (b.mentionCount / max) * (HEIGHT - 2 * PAD_Y);
      return (
        `<rect class="mentions-bar" data-t="${b.bucketStart}" data-value="${b.mentionCount}" ` +
        `x="${fmt(x(b.bucketStart))}" y="${fmt(HEIGHT - PAD_Y - h)}" ` +
        `width="${fmt(barWidth)}" height="${fmt(h)}"></rect>`
      );
    })
    .join('');
  return { svg: svgShell(body, 'mentions', 'keyword mentions per bucket'), values };
}

/** Mean sentiment as a line on a fixed [-1, 1] axis. */
export function sentimentLine(buckets: SentimentBucket[], domain?: TimeDomain): ChartModel {
  const dom = domain ?? sharedTimeDomain(buckets, []);
  const values = buckets.map((b) => b.meanSentiment);
  const x = xScale(dom);
  const y = (v: number) => HEIGHT / 2 - (v / 1.0) * ((HEIGHT - 2 * PAD_Y) / 2);
  const points = buckets
    .map((b) => `${fmt(x(b.bucketStart))},${fmt(y(b.meanSentiment))}`)
    .join(' ');
  const markers = buckets
    .map(
      (b) =>
        `<circle class="sentiment-point" data-t="${b.bucketStart}" ` +
        `data-value="${b.meanSentiment}" cx="${fmt(x(b.bucketStart))}" ` +
        `cy="${fmt(y(b.meanSentiment))}" r="2"></circle>`,
    )
    .join('');
  const zero = `<line class="zero-axis" x1="${PAD_X}" y1="${HEIGHT / 2}" x2="${WIDTH - PAD_X}" y2="${HEIGHT / 2}"></line>`;
  const line = buckets.length > 1 ? `<polyline class="sentiment-line" points="${points}"></polyline>` : '';
  return {
    svg: svgShell(zero + line + markers, 'sentiment', 'mean sentiment per bucket, scale -1 to 1'),
    values,
  };
}

/** Closing price as a line with its own right-hand scale. */
export function priceLine(bars: StockBar[], domain?: TimeDomain): ChartModel {
  const dom = domain ?? sharedTimeDomain([], bars);
  const values = bars.map((b) => b.close);
  const x = xScale(dom);
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (values.length === 0) {
    lo = 0;
    hi = 1;
  } else if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const y = (v: number) => HEIGHT - PAD_Y - ((v - lo) / (hi - lo)) * (HEIGHT - 2 * PAD_Y);
  const points = bars.map((b) => `${fmt(x(b.timestamp))},${fmt(y(b.close))}`).join(' ');
  const markers = bars
    .map(
      (b) =>
        `<circle class="price-point" data-t="${b.timestamp}" data-value="${b.close}" ` +
        `cx="${fmt(x(b.timestamp))}" cy="${fmt(y(b.close))}" r="2"></circle>`,
    )
    .join('');
  const line = bars.length > 1 ? `<polyline class="price-line" points="${points}"></polyline>` : '';
  return { svg: svgShell(line + markers, 'price', 'closing price'), values };
}

export interface DashboardCharts {
  mentions: ChartModel;
  sentiment: ChartModel;
  price: ChartModel;
  domain: TimeDomain;
}

/** All three charts on one shared time axis. */
export function dashboardCharts(buckets: SentimentBucket[], bars: StockBar[]): DashboardCharts {
  const domain = sharedTimeDomain(buckets, bars);
  return {
    mentions: mentionsBars(buckets, domain),
    sentiment: sentimentLine(buckets, domain),
    price: priceLine(bars, domain),
    domain,
  };
}
