"""Stored document shapes and their validity rules."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass


class DocumentError(ValueError):
    """Raised when a document violates its invariants."""


@dataclass(frozen=True)
class CommentDoc:
    """One crawled comment plus its stored sentiment score."""

    subreddit: str
    text: str
    timestamp: int
    commentId: str
    userId: str
    articleId: str
    upvotes: int
    downvotes: int
    sentiment: float

    def validate(self) -> None:
        if not self.subreddit:
            raise DocumentError("subreddit must be non-empty")
        if not self.commentId:
            raise DocumentError("commentId must be non-empty")
        if self.timestamp <= 0:
            raise DocumentError("timestamp must be > 0")
        if self.upvotes < 0 or self.downvotes < 0:
            raise DocumentError("vote counts must be >= 0")
        if not math.isfinite(self.sentiment) or not -1.0 <= self.sentiment <= 1.0:
            raise DocumentError("sentiment must be in [-1, 1]")

    def to_json_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json_dict(cls, data: dict) -> "CommentDoc":
        doc = cls(
            subreddit=data["subreddit"],
            text=data["text"],
            timestamp=int(data["timestamp"]),
            commentId=data["commentId"],
            userId=data["userId"],
            articleId=data["articleId"],
            upvotes=int(data["upvotes"]),
            downvotes=int(data["downvotes"]),
            sentiment=float(data["sentiment"]),
        )
        doc.validate()
        return doc


@dataclass(frozen=True)
class StockBar:
    """One daily OHLCV record for one ticker; timestamp is the bar start."""

    stock: str
    timestamp: int
    open: float
    high: float
    low: float
    close: float
    volume: int

    def validate(self) -> None:
        if not self.stock:
            raise DocumentError("stock must be non-empty")
        if self.timestamp <= 0:
            raise DocumentError("timestamp must be > 0")
        if self.volume < 0:
            raise DocumentError("volume must be >= 0")
        prices = (self.open, self.high, self.low, self.close)
        if any(not math.isfinite(p) or p <= 0 for p in prices):
            raise DocumentError("prices must be finite and > 0")
        if self.low > min(self.open, self.close) or self.high < max(self.open, self.close):
            raise DocumentError("low/high must bound open and close")

    def to_json_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json_dict(cls, data: dict) -> "StockBar":
        bar = cls(
            stock=data["stock"],
            timestamp=int(data["timestamp"]),
            open=float(data["open"]),
            high=float(data["high"]),
            low=float(data["low"]),
            close=float(data["close"]),
            volume=int(data["volume"]),
        )
        bar.validate()
        return bar


@dataclass(frozen=True)
class SentimentBucket:
    """Aggregates for one time bucket of matched comments."""

    bucketStart: int
    mentionCount: int
    meanSentiment: float
    positiveCount: int
    neutralCount: int
    negativeCount: int

    def to_json_dict(self) -> dict:
        return asdict(self)
