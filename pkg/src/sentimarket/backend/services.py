"""Service wiring: real modules in production, mocks otherwise.

The ``PRODUCTION`` environment variable selects between the disk-backed
store plus the live sentiment engine (``true``) and an in-memory store
plus a constant-score stub (``false``, the default). The GraphQL
contract is identical either way.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass
from pathlib import Path

import requests

from ..sentiment.engine import score_text
from ..sentiment.lexicon import Lexicon, load_default_lexicon, load_lexicon
from ..store.store import DocumentStore

logger = logging.getLogger(__name__)

PRODUCTION_ENV_VAR = "PRODUCTION"


class StartupError(RuntimeError):
    """Configuration problems that must abort startup."""


def parse_production_flag(value: str | None) -> bool:
    """Strict true/false parse; unset (or empty) defaults to false."""
    if value is None or value.strip() == "":
        return False
    lowered = value.strip().lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    raise StartupError(
        f"{PRODUCTION_ENV_VAR} must be 'true' or 'false', got {value!r}")


class LexiconScorer:
    """In-process scorer running both analyzers and the agreement rule."""

    def __init__(self, lexicon: Lexicon):
        self._lexicon = lexicon

    def score(self, text: str) -> float:
        return score_text(text, self._lexicon).sentiment


class RemoteScorer:
    """Client for a separately deployed sentiment endpoint."""

    def __init__(self, base_url: str, timeout: float = 10.0):
        self._url = base_url.rstrip("/") + "/sentiment"
        self._timeout = timeout

    def score(self, text: str) -> float:
        response = requests.post(self._url, json={"text": text}, timeout=self._timeout)
        response.raise_for_status()
        return float(response.json()["sentiment"])


class ConstantScorer:
    """Mock scorer: every text gets the same score."""

    def __init__(self, value: float = 0.0):
        self.value = value

    def score(self, text: str) -> float:
        return self.value


class TrackedSets:
    """Normalized, duplicate-free subreddit and ticker lists.

    Mutations are serialized; insertion order is the served order. With a
    state path the lists survive restarts.
    """

    def __init__(self, state_path: str | Path | None = None):
        self._lock = threading.Lock()
        self._subreddits: list[str] = []
        self._tickers: list[str] = []
        self._path = Path(state_path) if state_path is not None else None
        if self._path is not None and self._path.is_file():
            state = json.loads(self._path.read_text(encoding="utf-8"))
            self._subreddits = list(state.get("subreddits", []))
            self._tickers = list(state.get("tickers", []))

    @staticmethod
    def normalize_subreddit(name: str) -> str:
        name = name.strip()
        if name.lower().startswith("r/"):
            name = name[2:]
        return name.lower()

    @staticmethod
    def normalize_ticker(symbol: str) -> str:
        return symbol.strip().upper()

    def add_subreddit(self, name: str) -> bool:
        normalized = self.normalize_subreddit(name)
        if not normalized:
            raise ValueError("subreddit name must be non-empty")
        with self._lock:
            if normalized in self._subreddits:
                return False
            self._subreddits.append(normalized)
            self._save()
            return True

    def add_ticker(self, symbol: str) -> bool:
        normalized = self.normalize_ticker(symbol)
        if not normalized:
            raise ValueError("ticker symbol must be non-empty")
        with self._lock:
            if normalized in self._tickers:
                return False
            self._tickers.append(normalized)
            self._save()
            return True

    def subreddits(self) -> list[str]:
        with self._lock:
            return list(self._subreddits)

    def tickers(self) -> list[str]:
        with self._lock:
            return list(self._tickers)

    def _save(self) -> None:
        if self._path is None:
            return
        self._path.parent.mkdir(parents=True, exist_ok=True)
        payload = {"subreddits": self._subreddits, "tickers": self._tickers}
        self._path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


@dataclass
class Services:
    store: DocumentStore
    scorer: object  # anything with .score(text) -> float
    tracked: TrackedSets
    production: bool


def select_services(
    production: bool,
    data_dir: str | Path | None = None,
    lexicon_path: str | Path | None = None,
    sentiment_url: str | None = None,
    mock_score: float = 0.0,
) -> Services:
    """Wire the store and scorer for the requested mode."""
    if not production:
        logger.info("mock mode: in-memory store, constant sentiment %.3f", mock_score)
        return Services(
            store=DocumentStore(None),
            scorer=ConstantScorer(mock_score),
            tracked=TrackedSets(None),
            production=False,
        )
    if data_dir is None:
        raise StartupError("production mode requires a data directory")
    if sentiment_url is not None:
        scorer: object = RemoteScorer(sentiment_url)
    else:
        lexicon = load_lexicon(lexicon_path) if lexicon_path else load_default_lexicon()
        scorer = LexiconScorer(lexicon)
    data_dir = Path(data_dir)
    return Services(
        store=DocumentStore(data_dir / "store"),
        scorer=scorer,
        tracked=TrackedSets(data_dir / "tracked.json"),
        production=True,
    )
