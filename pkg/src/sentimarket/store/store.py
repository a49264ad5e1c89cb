"""Embedded document store with per-subject indices.

Documents live in in-memory maps keyed by document ID; each index can be
backed by an append-only `segments.jsonl` file that is replayed on open
(last write per ID wins). Grouping and aggregation run inside the query
against a consistent snapshot of one index, so stored sentiment values
are never classified or rounded at write time.
"""

from __future__ import annotations

import json
import logging
import re
import threading
from pathlib import Path

from ..sentiment.engine import NEUTRAL_BAND, SentimentLabel, classify
from .models import CommentDoc, SentimentBucket, StockBar
from .naming import index_for_stock, index_for_subreddit, is_valid_index_name, stock_doc_id

logger = logging.getLogger(__name__)

SEGMENT_FILE = "segments.jsonl"

# Refuse absurd bucket requests instead of exhausting memory.
MAX_BUCKETS = 1_000_000


class QueryError(ValueError):
    """Raised for invalid query parameters."""


class _Index:
    __slots__ = ("name", "docs", "lock")

    def __init__(self, name: str):
        self.name = name
        self.docs: dict[str, dict] = {}
        self.lock = threading.Lock()

    def snapshot(self) -> list[dict]:
        with self.lock:
            return list(self.docs.values())


def _encode(record: dict) -> str:
    # key order follows the document type's field order; deterministic bytes
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


class DocumentStore:
    """Comment and stock-bar storage with query-time aggregation.

    With ``data_dir=None`` the store is purely in-memory; otherwise every
    index owns a directory named after itself containing its segment file.
    """

    def __init__(self, data_dir: str | Path | None = None):
        self._data_dir = Path(data_dir) if data_dir is not None else None
        self._indices: dict[str, _Index] = {}
        self._registry_lock = threading.Lock()
        if self._data_dir is not None:
            self._data_dir.mkdir(parents=True, exist_ok=True)
            self._replay_segments()

    @property
    def persistent(self) -> bool:
        return self._data_dir is not None

    def _replay_segments(self) -> None:
        assert self._data_dir is not None
        for segment in sorted(self._data_dir.glob(f"*/{SEGMENT_FILE}")):
            name = segment.parent.name
            if not is_valid_index_name(name):
                logger.warning("skipping non-index directory %s", segment.parent)
                continue
            index = _Index(name)
            with segment.open("r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    record = json.loads(line)
                    index.docs[self._record_id(name, record)] = record
            self._indices[name] = index
            logger.debug("replayed %d docs into %s", len(index.docs), name)

    @staticmethod
    def _record_id(index_name: str, record: dict) -> str:
        if index_name.startswith("r_"):
            return record["commentId"]
        return stock_doc_id(record["stock"], int(record["timestamp"]))

    def _index(self, name: str, create: bool) -> _Index | None:
        with self._registry_lock:
            index = self._indices.get(name)
            if index is None and create:
                index = _Index(name)
                self._indices[name] = index
            return index

    def _upsert(self, index_name: str, doc_id: str, record: dict) -> str:
        index = self._index(index_name, create=True)
        assert index is not None
        with index.lock:
            existing = index.docs.get(doc_id)
            outcome = "created" if existing is None else "updated"
            if existing == record:
                return outcome  # identical content: no state change, no write
            index.docs[doc_id] = record
            if self._data_dir is not None:
                index_dir = self._data_dir / index_name
                index_dir.mkdir(parents=True, exist_ok=True)
                with (index_dir / SEGMENT_FILE).open("a", encoding="utf-8") as fh:
                    fh.write(_encode(record) + "\n")
        return outcome

    # --- writes ---------------------------------------------------------

    def upsert_comment(self, doc: CommentDoc) -> str:
        doc.validate()
        return self._upsert(index_for_subreddit(doc.subreddit), doc.commentId, doc.to_json_dict())

    def upsert_stock(self, bar: StockBar) -> str:
        bar.validate()
        doc_id = stock_doc_id(bar.stock, bar.timestamp)
        return self._upsert(index_for_stock(bar.stock), doc_id, bar.to_json_dict())

    # --- reads ----------------------------------------------------------

    def get_by_id(self, index_name: str, doc_id: str) -> dict | None:
        if not is_valid_index_name(index_name):
            raise QueryError(f"malformed index name: {index_name!r}")
        index = self._index(index_name, create=False)
        if index is None:
            return None
        with index.lock:
            record = index.docs.get(doc_id)
            return dict(record) if record is not None else None

    def list_indices(self, prefix: str) -> list[str]:
        if prefix not in ("r_", "f_"):
            raise QueryError(f"unknown index prefix: {prefix!r}")
        with self._registry_lock:
            return sorted(n for n in self._indices if n.startswith(prefix))

    def aggregate_sentiment(
        self,
        subreddit: str,
        keywords: list[str],
        bucket_width: int,
        t_from: int,
        t_to: int,
        *,
        band: float = NEUTRAL_BAND,
    ) -> list[SentimentBucket]:
        """Bucketed mention counts, mean sentiment, and label counts.

        Matches comments in [t_from, t_to) whose text contains ALL
        keywords as whole words (case-insensitive); an empty keyword list
        matches everything. Buckets align to t_from and cover the whole
        range, zero-filled where nothing matched.
        """
        if t_from >= t_to:
            raise QueryError("time range requires from < to")
        if bucket_width <= 0:
            raise QueryError("bucketWidth must be > 0")
        n_buckets = -(-(t_to - t_from) // bucket_width)
        if n_buckets > MAX_BUCKETS:
            raise QueryError(f"query would produce {n_buckets} buckets (max {MAX_BUCKETS})")
        patterns = [_keyword_pattern(kw) for kw in keywords]

        counts = [0] * n_buckets
        sums = [0.0] * n_buckets
        labels = [[0, 0, 0] for _ in range(n_buckets)]  # negative, neutral, positive
        index = self._index(index_for_subreddit(subreddit), create=False)
        for record in index.snapshot() if index is not None else ():
            ts = record["timestamp"]
            if not t_from <= ts < t_to:
                continue
            text = record["text"]
            if not all(p.search(text) for p in patterns):
                continue
            k = (ts - t_from) // bucket_width
            counts[k] += 1
            sums[k] += record["sentiment"]
            label = classify(record["sentiment"], band)
            if label is SentimentLabel.NEGATIVE:
                labels[k][0] += 1
            elif label is SentimentLabel.NEUTRAL:
                labels[k][1] += 1
            else:
                labels[k][2] += 1

        return [
            SentimentBucket(
                bucketStart=t_from + k * bucket_width,
                mentionCount=counts[k],
                meanSentiment=sums[k] / counts[k] if counts[k] else 0.0,
                positiveCount=labels[k][2],
                neutralCount=labels[k][1],
                negativeCount=labels[k][0],
            )
            for k in range(n_buckets)
        ]

    def stock_series(self, ticker: str, t_from: int, t_to: int) -> list[StockBar]:
        """All bars of one ticker with timestamp in [t_from, t_to), ascending."""
        if t_from >= t_to:
            raise QueryError("time range requires from < to")
        index = self._index(index_for_stock(ticker), create=False)
        if index is None:
            return []
        bars = [
            StockBar.from_json_dict(record)
            for record in index.snapshot()
            if t_from <= record["timestamp"] < t_to
        ]
        bars.sort(key=lambda b: b.timestamp)
        return bars


def _keyword_pattern(keyword: str) -> re.Pattern[str]:
    if not keyword or keyword.strip() != keyword or not keyword.strip():
        raise QueryError(f"keywords must be non-empty and trimmed: {keyword!r}")
    return re.compile(r"(?<!\w)" + re.escape(keyword) + r"(?!\w)", re.IGNORECASE)
