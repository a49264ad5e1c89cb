export function renderAbout(): string {
  return `
<article class="about">
  <h2>About</h2>
  <p>This dashboard correlates the mood of chosen subreddits with stock
  price history. Crawlers continuously collect comments and daily OHLCV
  bars, a rule-based engine scores each comment with two independent
  analyzers (agreeing scores pass through, disagreements count as
  neutral), and the backend aggregates everything at query time.</p>
  <p>Pick a subreddit, add keyword chips to narrow the mention counts,
  and compare the sentiment curve against the closing price on the
  shared time axis. An empty keyword list shows all entries.</p>
</article>`.trim();
}
