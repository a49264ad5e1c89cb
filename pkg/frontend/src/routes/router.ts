/** Maps a location path to a page; every page renders inside the layout. */

import { layout } from './layout.js';
import { renderAbout } from './about.js';
import { renderNotFound } from './notFound.js';

export type RouteName = 'dashboard' | 'about' | 'notFound';

export function resolveRoute(path: string): RouteName {
  const clean = path.replace(/\/+$/, '') || '/';
  if (clean === '/') return 'dashboard';
  if (clean === '/about') return 'about';
  return 'notFound';
}

/**
 * Render a full page. The dashboard's body is supplied by the caller
 * (it depends on live view state); static pages render themselves.
 */
export function renderPage(path: string, dashboardBody: () => string): string {
  switch (resolveRoute(path)) {
    case 'dashboard':
      return layout(dashboardBody(), '/');
    case 'about':
      return layout(renderAbout(), '/about');
    case 'notFound':
      return layout(renderNotFound(path), path);
  }
}
