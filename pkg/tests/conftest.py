from __future__ import annotations

import json
import random
import sys
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for `oracles` / generator imports

from sentimarket.backend.app import serve_backend
from sentimarket.backend.auth import KeyRing
from sentimarket.backend.services import Services, TrackedSets
from sentimarket.sentiment.lexicon import load_default_lexicon
from sentimarket.store.store import DocumentStore

TEST_KEYS = {
    "reddit_crawler": "rk-0123456789abcdef-reddit",
    "market_crawler": "mk-0123456789abcdef-market",
    "admin": "ak-0123456789abcdef-admin0",
}

WORDS_POSITIVE = ["good", "great", "awesome", "moon", "bullish", "win", "gains", "love"]
WORDS_NEGATIVE = ["bad", "terrible", "crash", "bearish", "loss", "scam", "hate", "rekt"]
WORDS_NEUTRAL = ["the", "market", "stock", "price", "today", "gme", "amc", "thread"]


@pytest.fixture(scope="session")
def lexicon():
    return load_default_lexicon()


@pytest.fixture(scope="session")
def oracle_rows():
    path = Path(__file__).parent / "data" / "sentiment_oracle.json"
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture()
def keyring():
    return KeyRing(dict(TEST_KEYS))


def write_key_files(directory: Path, keys: dict[str, str] | None = None) -> dict[str, str]:
    keys = dict(keys or TEST_KEYS)
    directory.mkdir(parents=True, exist_ok=True)
    for role, value in keys.items():
        (directory / f"key_{role}").write_text(value + "\n", encoding="utf-8")
    return keys


def make_comment(i: int, subreddit: str = "wallstreetbets", *, timestamp: int | None = None,
                 text: str = "neutral text", sentiment: float = 0.0) -> dict:
    return {
        "subreddit": subreddit,
        "text": text,
        "timestamp": timestamp if timestamp is not None else 1000 + i,
        "commentId": f"c{i}",
        "userId": f"u{i % 7}",
        "articleId": f"a{i % 13}",
        "upvotes": i % 5,
        "downvotes": i % 3,
        "sentiment": sentiment,
    }


def random_comment_set(rng: random.Random, size: int, subreddit: str = "wallstreetbets",
                       t_from: int = 10_000, t_to: int = 20_000) -> list[dict]:
    comments = []
    for i in range(size):
        n_words = rng.randint(1, 12)
        text = " ".join(rng.choice(WORDS_POSITIVE + WORDS_NEGATIVE + WORDS_NEUTRAL)
                        for _ in range(n_words))
        comments.append({
            "subreddit": subreddit,
            "text": text,
            # some deliberately outside [t_from, t_to)
            "timestamp": rng.randint(t_from - 1000, t_to + 1000),
            "commentId": f"r{i}",
            "userId": f"u{rng.randint(0, 20)}",
            "articleId": f"a{rng.randint(0, 40)}",
            "upvotes": rng.randint(0, 100),
            "downvotes": rng.randint(0, 30),
            "sentiment": round(rng.uniform(-1, 1), 6),
        })
    return comments


@contextmanager
def running_backend(services: Services, keyring: KeyRing):
    server = serve_backend("127.0.0.1", 0, services, keyring)
    try:
        yield f"http://127.0.0.1:{server.server_address[1]}"
    finally:
        server.shutdown()
        server.server_close()


@pytest.fixture()
def mock_backend(keyring):
    services = Services(store=DocumentStore(None), scorer=_FixedScorer(0.5),
                        tracked=TrackedSets(None), production=False)
    with running_backend(services, keyring) as url:
        yield url, services


class _FixedScorer:
    def __init__(self, value: float):
        self.value = value

    def score(self, text: str) -> float:
        return self.value
