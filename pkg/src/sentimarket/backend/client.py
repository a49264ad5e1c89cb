"""GraphQL-over-HTTP client used by the crawlers and by tests."""

from __future__ import annotations

import logging

import requests

from .auth import ACCESS_KEY_HEADER

logger = logging.getLogger(__name__)

TRACKED_SUBREDDITS_QUERY = "query { trackedSubreddits }"
TRACKED_TICKERS_QUERY = "query { trackedTickers }"

SUBMIT_COMMENTS_MUTATION = """
mutation SubmitComments($comments: [CommentInput!]!) {
  submitComments(comments: $comments) { accepted rejected }
}
"""

SUBMIT_STOCK_BARS_MUTATION = """
mutation SubmitStockBars($bars: [StockBarInput!]!) {
  submitStockBars(bars: $bars) { accepted rejected }
}
"""

TRACK_SUBREDDIT_MUTATION = """
mutation TrackSubreddit($name: String!) { trackSubreddit(name: $name) }
"""

TRACK_TICKER_MUTATION = """
mutation TrackTicker($symbol: String!) { trackTicker(symbol: $symbol) }
"""

SENTIMENT_SERIES_QUERY = """
query SentimentSeries($subreddit: String!, $keywords: [String!]!,
                      $bucketWidth: Int!, $from: Int!, $to: Int!) {
  sentimentSeries(subreddit: $subreddit, keywords: $keywords,
                  bucketWidth: $bucketWidth, from: $from, to: $to) {
    bucketStart mentionCount meanSentiment positiveCount neutralCount negativeCount
  }
}
"""

STOCK_SERIES_QUERY = """
query StockSeries($ticker: String!, $from: Int!, $to: Int!) {
  stockSeries(ticker: $ticker, from: $from, to: $to) {
    stock timestamp open high low close volume
  }
}
"""


class BackendError(RuntimeError):
    """Transport failure or GraphQL error from the backend."""

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        self.code = code


class BackendClient:
    def __init__(self, base_url: str, access_key: str | None = None, timeout: float = 15.0):
        self._url = base_url.rstrip("/") + "/graphql"
        self._access_key = access_key
        self._timeout = timeout
        self._session = requests.Session()

    def execute(self, query: str, variables: dict | None = None) -> dict:
        headers = {}
        if self._access_key is not None:
            headers[ACCESS_KEY_HEADER] = self._access_key
        try:
            response = self._session.post(
                self._url,
                json={"query": query, "variables": variables or {}},
                headers=headers,
                timeout=self._timeout,
            )
        except requests.RequestException as exc:
            raise BackendError(f"backend unreachable: {exc}") from exc
        try:
            envelope = response.json()
        except ValueError:
            raise BackendError(f"non-JSON backend response (HTTP {response.status_code})") from None
        errors = envelope.get("errors")
        if errors:
            first = errors[0]
            code = (first.get("extensions") or {}).get("code")
            raise BackendError(first.get("message", "GraphQL error"), code=code)
        if response.status_code != 200 or "data" not in envelope:
            raise BackendError(f"unexpected backend response (HTTP {response.status_code})")
        return envelope["data"]

    # --- typed helpers ----------------------------------------------------

    def tracked_subreddits(self) -> list[str]:
        return self.execute(TRACKED_SUBREDDITS_QUERY)["trackedSubreddits"]

    def tracked_tickers(self) -> list[str]:
        return self.execute(TRACKED_TICKERS_QUERY)["trackedTickers"]

    def track_subreddit(self, name: str) -> bool:
        return self.execute(TRACK_SUBREDDIT_MUTATION, {"name": name})["trackSubreddit"]

    def track_ticker(self, symbol: str) -> bool:
        return self.execute(TRACK_TICKER_MUTATION, {"symbol": symbol})["trackTicker"]

    def submit_comments(self, comments: list[dict]) -> dict:
        return self.execute(SUBMIT_COMMENTS_MUTATION, {"comments": comments})["submitComments"]

    def submit_stock_bars(self, bars: list[dict]) -> dict:
        return self.execute(SUBMIT_STOCK_BARS_MUTATION, {"bars": bars})["submitStockBars"]

    def sentiment_series(self, subreddit: str, keywords: list[str],
                         bucket_width: int, t_from: int, t_to: int) -> list[dict]:
        data = self.execute(SENTIMENT_SERIES_QUERY, {
            "subreddit": subreddit, "keywords": keywords,
            "bucketWidth": bucket_width, "from": t_from, "to": t_to,
        })
        return data["sentimentSeries"]

    def stock_series(self, ticker: str, t_from: int, t_to: int) -> list[dict]:
        data = self.execute(STOCK_SERIES_QUERY, {"ticker": ticker, "from": t_from, "to": t_to})
        return data["stockSeries"]

    def healthy(self) -> bool:
        try:
            response = self._session.get(self._url.replace("/graphql", "/healthz"), timeout=2)
            return response.status_code == 200
        except requests.RequestException:
            return False
