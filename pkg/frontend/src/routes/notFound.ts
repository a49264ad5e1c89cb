export function renderNotFound(path: string): string {
  const safe = path.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
  return `
<article class="not-found">
  <h2>404</h2>
  <p>No page at <code>${safe}</code>. Try the <a href="/">dashboard</a>.</p>
</article>`.trim();
}
