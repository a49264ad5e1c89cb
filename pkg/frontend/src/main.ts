/**
 * Browser bootstrap: wires the controller, router, and URL state to the
 * DOM. Everything interesting is in lib/ and routes/; this file only
 * touches document and history.
 */

import { backendApi } from './lib/graphqlClient.js';
import { DashboardController, type DashboardView } from './lib/controller.js';
import { parseQueryState, serializeQueryState } from './lib/queryState.js';
import { renderDashboard, type TrackedLists } from './routes/dashboard.js';
import { renderPage, resolveRoute } from './routes/router.js';

declare global {
  interface Window {
    BACKEND_BASE_URL?: string;
  }
}

const BACKEND_URL = window.BACKEND_BASE_URL ?? 'http://127.0.0.1:8080';

const api = backendApi(BACKEND_URL);
const app = document.getElementById('app')!;
let tracked: TrackedLists = { subreddits: [], tickers: [] };

const controller = new DashboardController(
  api,
  parseQueryState(window.location.search),
  (view) => {
    window.history.replaceState(null, '', serializeQueryState(view.state));
    render(view);
  },
);

function render(view: DashboardView): void {
  app.innerHTML = renderPage(window.location.pathname, () => renderDashboard(view, tracked));
  if (resolveRoute(window.location.pathname) === 'dashboard') {
    bindControls();
  }
}

function bindControls(): void {
  const select = (id: string) => document.getElementById(id) as HTMLSelectElement | null;
  const input = (id: string) => document.getElementById(id) as HTMLInputElement | null;

  select('subreddit-select')?.addEventListener('change', (e) =>
    controller.setSubreddit((e.target as HTMLSelectElement).value),
  );
  select('ticker-select')?.addEventListener('change', (e) =>
    controller.setTicker((e.target as HTMLSelectElement).value),
  );
  select('bucket-select')?.addEventListener('change', (e) =>
    controller.setBucketWidth(Number((e.target as HTMLSelectElement).value)),
  );
  const applyRange = () => {
    const fromValue = input('from-input')?.value;
    const toValue = input('to-input')?.value;
    if (fromValue && toValue) {
      controller.setRange(
        Math.floor(Date.parse(fromValue + 'T00:00:00Z') / 1000),
        Math.floor(Date.parse(toValue + 'T00:00:00Z') / 1000),
      );
    }
  };
  input('from-input')?.addEventListener('change', applyRange);
  input('to-input')?.addEventListener('change', applyRange);

  const keywordInput = input('keyword-input');
  keywordInput?.addEventListener('keydown', (e) => {
    if (e.key === 'Enter' && keywordInput.value.trim()) {
      controller.addKeyword(keywordInput.value);
      keywordInput.value = '';
    }
  });
  document.querySelectorAll<HTMLButtonElement>('.chip-remove').forEach((button) =>
    button.addEventListener('click', () => controller.removeKeyword(button.dataset.keyword ?? '')),
  );
}

async function start(): Promise<void> {
  render(controller.current());
  if (resolveRoute(window.location.pathname) !== 'dashboard') return;
  try {
    tracked = await api.tracked();
  } catch {
    // selectors fall back to the current state's values
  }
  await controller.refresh();
}

void start();
