"""Proactive comment crawler.

Each cycle asks the backend which subreddits to watch, pages new
comments out of a source adapter under the shared request budget, and
delivers the batch through the authenticated mutation. Cursors are
committed only after the backend acknowledges a delivery, so crashes and
rejections re-fetch instead of losing data; the store's upsert keyed on
commentId absorbs the resulting duplicates.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

import requests

from ..backend.client import BackendClient, BackendError
from .clock import Clock, SystemClock
from .ratelimit import RateBudget

logger = logging.getLogger(__name__)

RAW_COMMENT_FIELDS = (
    "subreddit", "text", "timestamp", "commentId", "userId",
    "articleId", "upvotes", "downvotes",
)

DEFAULT_POLL_INTERVAL = 300.0
DEFAULT_PER_CYCLE_CAP = 1000
DEFAULT_PAGE_SIZE = 100
SUBMIT_CHUNK_SIZE = 500
BACKOFF_BASE = 5.0
BACKOFF_CAP = 600.0


class CommentSource(Protocol):
    def fetch_comments(
        self, subreddit: str, after_cursor: str | None, max_items: int,
    ) -> tuple[list[dict], str | None]:
        """Return (raw comments, next cursor); never re-yields delivered IDs."""


@dataclass
class CrawlCycleReport:
    subredditsPolled: int = 0
    commentsFetched: int = 0
    commentsSubmitted: int = 0
    errors: list[tuple[str, str]] = field(default_factory=list)


class CursorStore:
    """Per-subreddit resume positions, persisted after acknowledged submits."""

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path is not None else None
        self._cursors: dict[str, str] = {}
        if self._path is not None and self._path.is_file():
            self._cursors = json.loads(self._path.read_text(encoding="utf-8"))

    def get(self, subreddit: str) -> str | None:
        return self._cursors.get(subreddit)

    def commit(self, subreddit: str, cursor: str | None) -> None:
        if cursor is None:
            return
        self._cursors[subreddit] = cursor
        if self._path is not None:
            self._path.parent.mkdir(parents=True, exist_ok=True)
            self._path.write_text(json.dumps(self._cursors, indent=2, sort_keys=True) + "\n",
                                  encoding="utf-8")


class FixtureCommentSource:
    """Replays a JSON-lines file of raw comments with positional cursors."""

    def __init__(self, path: str | Path):
        self._by_subreddit: dict[str, list[dict]] = {}
        with Path(path).open("r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                raw = json.loads(line)
                self._by_subreddit.setdefault(raw["subreddit"].lower(), []).append(raw)

    def fetch_comments(
        self, subreddit: str, after_cursor: str | None, max_items: int,
    ) -> tuple[list[dict], str | None]:
        items = self._by_subreddit.get(subreddit.lower(), [])
        start = int(after_cursor) if after_cursor is not None else 0
        page = items[start:start + max_items]
        return page, str(start + len(page))


class LiveRedditSource:
    """Adapter for the real comment API; credentials come from secrets files.

    Excluded from the test suite: it exists so production deployments can
    swap it in behind the same contract as the fixture source.
    """

    TOKEN_URL = "https://www.reddit.com/api/v1/access_token"
    API_BASE = "https://oauth.reddit.com"

    def __init__(self, client_id: str, client_secret: str, username: str,
                 password: str, user_agent: str = "sentimarket/0.1"):
        self._auth = (client_id, client_secret)
        self._credentials = {"grant_type": "password",
                             "username": username, "password": password}
        self._user_agent = user_agent
        self._token: str | None = None

    def _ensure_token(self) -> str:
        if self._token is None:
            response = requests.post(
                self.TOKEN_URL, auth=self._auth, data=self._credentials,
                headers={"User-Agent": self._user_agent}, timeout=15)
            response.raise_for_status()
            self._token = response.json()["access_token"]
        return self._token

    def fetch_comments(
        self, subreddit: str, after_cursor: str | None, max_items: int,
    ) -> tuple[list[dict], str | None]:
        params: dict[str, str] = {"limit": str(min(max_items, 100))}
        if after_cursor:
            params["before"] = after_cursor  # only items newer than the watermark
        response = requests.get(
            f"{self.API_BASE}/r/{subreddit}/comments",
            params=params,
            headers={"Authorization": f"Bearer {self._ensure_token()}",
                     "User-Agent": self._user_agent},
            timeout=15,
        )
        if response.status_code == 401:
            self._token = None
            response.raise_for_status()
        response.raise_for_status()
        children = response.json()["data"]["children"]
        comments = []
        for child in children:
            data = child["data"]
            comments.append({
                "subreddit": data["subreddit"].lower(),
                "text": data.get("body", ""),
                "timestamp": int(data["created_utc"]),
                "commentId": data["id"],
                "userId": data.get("author", ""),
                "articleId": data.get("link_id", ""),
                "upvotes": max(int(data.get("ups", 0)), 0),
                "downvotes": max(int(data.get("downs", 0)), 0),
            })
        next_cursor = children[0]["data"]["name"] if children else after_cursor
        return comments, next_cursor


class RedditCrawler:
    def __init__(
        self,
        client: BackendClient,
        source: CommentSource,
        budget: RateBudget,
        cursors: CursorStore | None = None,
        clock: Clock | None = None,
        per_cycle_cap: int = DEFAULT_PER_CYCLE_CAP,
        page_size: int = DEFAULT_PAGE_SIZE,
    ):
        self._client = client
        self._source = source
        self._budget = budget
        self._cursors = cursors if cursors is not None else CursorStore(None)
        self._clock = clock if clock is not None else SystemClock()
        self._per_cycle_cap = per_cycle_cap
        self._page_size = page_size

    def poll_tracked(self) -> list[str]:
        return self._client.tracked_subreddits()

    def collect(self, subreddit: str) -> tuple[list[dict], str | None, str | None]:
        """Page new comments; returns (comments, pending cursor, error)."""
        cursor = self._cursors.get(subreddit)
        collected: list[dict] = []
        error: str | None = None
        while len(collected) < self._per_cycle_cap:
            want = min(self._page_size, self._per_cycle_cap - len(collected))
            self._budget.acquire()
            try:
                page, cursor = self._source.fetch_comments(subreddit, cursor, want)
            except Exception as exc:  # partial results still get delivered
                error = str(exc)
                logger.warning("source failure on %s: %s", subreddit, exc)
                break
            collected.extend(page)
            if len(page) < want:
                break
        return collected, cursor, error

    def _submit(self, comments: list[dict]) -> int:
        delivered = 0
        for start in range(0, len(comments), SUBMIT_CHUNK_SIZE):
            chunk = comments[start:start + SUBMIT_CHUNK_SIZE]
            self._client.submit_comments(chunk)
            delivered += len(chunk)
        return delivered

    def run_cycle(self) -> CrawlCycleReport:
        report = CrawlCycleReport()
        try:
            subreddits = self.poll_tracked()
        except BackendError as exc:
            report.errors.append(("*", f"poll failed: {exc}"))
            return report
        report.subredditsPolled = len(subreddits)
        for subreddit in subreddits:
            comments, pending_cursor, error = self.collect(subreddit)
            report.commentsFetched += len(comments)
            if error is not None:
                report.errors.append((subreddit, error))
            if not comments:
                # nothing unacknowledged behind this cursor; safe to commit
                self._cursors.commit(subreddit, pending_cursor)
                continue
            try:
                report.commentsSubmitted += self._submit(comments)
            except BackendError as exc:
                # keep the old cursor: next cycle re-fetches, upsert dedupes
                report.errors.append((subreddit, f"submit failed: {exc}"))
                continue
            self._cursors.commit(subreddit, pending_cursor)
        return report

    def run_forever(self, interval: float = DEFAULT_POLL_INTERVAL,
                    max_cycles: int | None = None) -> list[CrawlCycleReport]:
        reports = []
        failures = 0
        cycles = 0
        while max_cycles is None or cycles < max_cycles:
            report = self.run_cycle()
            reports.append(report)
            cycles += 1
            logger.info("cycle %d: polled=%d fetched=%d submitted=%d errors=%d",
                        cycles, report.subredditsPolled, report.commentsFetched,
                        report.commentsSubmitted, len(report.errors))
            if max_cycles is not None and cycles >= max_cycles:
                break
            if report.errors:
                failures += 1
                delay = min(BACKOFF_BASE * (2 ** (failures - 1)), BACKOFF_CAP)
            else:
                failures = 0
                delay = interval
            self._clock.sleep(delay)
        return reports
