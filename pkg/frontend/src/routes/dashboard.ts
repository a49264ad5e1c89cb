/**
 * Dashboard page: query controls plus the three time-aligned charts
 * (mentions, mean sentiment, closing price). A pure function of the
 * view model; the browser glue only swaps innerHTML and wires events.
 */

import { dashboardCharts } from '../lib/charts.js';
import type { DashboardView } from '../lib/controller.js';
import { escapeHtml } from './layout.js';

export interface TrackedLists {
  subreddits: string[];
  tickers: string[];
}

function options(values: string[], selected: string): string {
  const all = values.includes(selected) ? values : [selected, ...values];
  return all
    .map(
      (v) =>
        `<option value="${escapeHtml(v)}"${v === selected ? ' selected' : ''}>${escapeHtml(v)}</option>`,
    )
    .join('');
}

function chips(keywords: string[]): string {
  if (keywords.length === 0) {
    return '<span class="chip-empty">no keywords: showing all entries</span>';
  }
  return keywords
    .map(
      (kw) =>
        `<span class="chip" data-keyword="${escapeHtml(kw)}">${escapeHtml(kw)}` +
        `<button class="chip-remove" data-keyword="${escapeHtml(kw)}" ` +
        `aria-label="remove ${escapeHtml(kw)}">&times;</button></span>`,
    )
    .join('');
}

function toDateInput(epochSeconds: number): string {
  return new Date(epochSeconds * 1000).toISOString().slice(0, 10);
}

export function renderControls(view: DashboardView, tracked: TrackedLists): string {
  const { state, validation } = view;
  return `
<section class="controls">
  <label>Subreddit
    <select id="subreddit-select">${options(tracked.subreddits, state.subreddit)}</select>
  </label>
  <label>Ticker
    <select id="ticker-select">${options(tracked.tickers, state.ticker)}</select>
  </label>
  <label>From <input type="date" id="from-input" value="${toDateInput(state.from)}"></label>
  <label>To <input type="date" id="to-input" value="${toDateInput(state.to)}"></label>
  <label>Bucket
    <select id="bucket-select">${options(['3600', '86400', '604800'], String(state.bucketWidth))}</select>
  </label>
  <div class="keywords">
    <input type="text" id="keyword-input" placeholder="add keyword...">
    <div class="chip-row" id="chip-row">${chips(state.keywords)}</div>
  </div>
  ${
    validation.length > 0
      ? `<div class="validation" role="alert">${validation.map(escapeHtml).join('<br>')}</div>`
      : ''
  }
</section>`.trim();
}

export function renderCharts(view: DashboardView): string {
  if (view.data === null) {
    return '<section class="charts empty">no data yet</section>';
  }
  const charts = dashboardCharts(view.data.buckets, view.data.bars);
  return `
<section class="charts">
  <h3>Mentions</h3>${charts.mentions.svg}
  <h3>Mean sentiment</h3>${charts.sentiment.svg}
  <h3>Close price</h3>${charts.price.svg}
</section>`.trim();
}

export function renderDashboard(view: DashboardView, tracked: TrackedLists): string {
  const banner = view.error
    ? `<div class="error-banner" role="alert">backend error: ${escapeHtml(view.error)}</div>`
    : '';
  const loading = view.loading ? '<div class="loading">loading...</div>' : '';
  return `<div class="dashboard">${banner}${loading}${renderControls(view, tracked)}${renderCharts(view)}</div>`;
}
