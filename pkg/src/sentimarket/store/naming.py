"""Index names and document IDs.

Every subreddit gets its own `r_` index and every ticker its own `f_`
index; stock documents are keyed `<ticker>_<timestamp>` so refetches of
the same bar update in place.
"""

from __future__ import annotations

import re

INDEX_NAME_RE = re.compile(r"^[rf]_[a-z0-9_]+$")

SUBREDDIT_PREFIX = "r_"
STOCK_PREFIX = "f_"


def _normalize(name: str) -> str:
    return "".join(c if c.isascii() and c.isalnum() else "_" for c in name.lower())


def index_for_subreddit(name: str) -> str:
    if not name:
        raise ValueError("subreddit name must be non-empty")
    return SUBREDDIT_PREFIX + _normalize(name)


def index_for_stock(ticker: str) -> str:
    if not ticker:
        raise ValueError("ticker must be non-empty")
    return STOCK_PREFIX + _normalize(ticker)


def stock_doc_id(ticker: str, timestamp: int) -> str:
    if not ticker:
        raise ValueError("ticker must be non-empty")
    if timestamp <= 0:
        raise ValueError("timestamp must be > 0")
    return f"{_normalize(ticker)}_{timestamp}"


def is_valid_index_name(name: str) -> bool:
    return INDEX_NAME_RE.fullmatch(name) is not None
