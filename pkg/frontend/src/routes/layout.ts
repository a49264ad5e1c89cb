/** Shared shell: navigation bar and footer around every page. */

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function layout(content: string, activePath: string): string {
  const link = (href: string, label: string) =>
    `<a href="${href}" class="nav-link${activePath === href ? ' active' : ''}">${label}</a>`;
  return `
<div class="shell">
  <nav class="navbar">
    <span class="brand">sentimarket</span>
    ${link('/', 'Dashboard')}
    ${link('/about', 'About')}
  </nav>
  <main class="content">${content}</main>
  <footer class="footer">subreddit sentiment &times; market data</footer>
</div>`.trim();
}
