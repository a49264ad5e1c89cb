"""Proactive daily-bar crawler.

Polls the backend for tracked tickers, pulls OHLCV bars from a provider
adapter starting at the per-ticker watermark, and submits them through
the authenticated mutation. Watermarks advance only after the backend
acknowledges; replays are harmless because bars upsert under the
`<ticker>_<timestamp>` document ID.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta, timezone
from pathlib import Path
from typing import Protocol

import requests

from ..backend.client import BackendClient, BackendError
from ..store.models import StockBar
from .clock import Clock, SystemClock, utc_day

logger = logging.getLogger(__name__)

DEFAULT_POLL_INTERVAL = 3600.0
SUBMIT_CHUNK_SIZE = 500
BACKOFF_BASE = 5.0
BACKOFF_CAP = 600.0
BACKFILL_START = date(1970, 1, 2)

FIXTURE_CSV_HEADER = ["date", "open", "high", "low", "close", "volume"]


class MarketDataProvider(Protocol):
    def fetch_daily_bars(self, ticker: str, from_date: date, to_date: date) -> list[StockBar]:
        """Bars for [from_date, to_date], ascending, at most one per day."""


def day_start_timestamp(day: date) -> int:
    """Bar timestamp rule: 00:00:00 UTC of the trading day."""
    return int(datetime(day.year, day.month, day.day, tzinfo=timezone.utc).timestamp())


def timestamp_day(timestamp: int) -> date:
    return datetime.fromtimestamp(timestamp, tz=timezone.utc).date()


@dataclass
class MarketCycleReport:
    tickersPolled: int = 0
    barsSubmitted: int = 0
    errors: list[tuple[str, str]] = field(default_factory=list)


class WatermarkStore:
    """Last acknowledged trading day per ticker."""

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path is not None else None
        self._days: dict[str, str] = {}
        if self._path is not None and self._path.is_file():
            self._days = json.loads(self._path.read_text(encoding="utf-8"))

    def get(self, ticker: str) -> date | None:
        raw = self._days.get(ticker)
        return date.fromisoformat(raw) if raw else None

    def commit(self, ticker: str, day: date) -> None:
        self._days[ticker] = day.isoformat()
        if self._path is not None:
            self._path.parent.mkdir(parents=True, exist_ok=True)
            self._path.write_text(json.dumps(self._days, indent=2, sort_keys=True) + "\n",
                                  encoding="utf-8")


class FixtureMarketProvider:
    """Reads `<TICKER>.csv` files with a `date,open,high,low,close,volume` header."""

    def __init__(self, directory: str | Path):
        self._dir = Path(directory)

    def _csv_path(self, ticker: str) -> Path | None:
        for candidate in (ticker, ticker.upper(), ticker.lower()):
            path = self._dir / f"{candidate}.csv"
            if path.is_file():
                return path
        return None

    def fetch_daily_bars(self, ticker: str, from_date: date, to_date: date) -> list[StockBar]:
        path = self._csv_path(ticker)
        if path is None:
            return []
        bars = []
        with path.open("r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != FIXTURE_CSV_HEADER:
                raise ValueError(f"{path}: expected header {','.join(FIXTURE_CSV_HEADER)}")
            for row in reader:
                day = date.fromisoformat(row["date"])
                if not from_date <= day <= to_date:
                    continue
                bars.append(StockBar(
                    stock=ticker.upper(),
                    timestamp=day_start_timestamp(day),
                    open=float(row["open"]),
                    high=float(row["high"]),
                    low=float(row["low"]),
                    close=float(row["close"]),
                    volume=int(row["volume"]),
                ))
        bars.sort(key=lambda b: b.timestamp)
        return bars


class YahooFinanceProvider:
    """Adapter for the public chart API; excluded from the test suite."""

    BASE_URL = "https://query1.finance.yahoo.com/v8/finance/chart"

    def __init__(self, user_agent: str = "sentimarket/0.1"):
        self._user_agent = user_agent

    def fetch_daily_bars(self, ticker: str, from_date: date, to_date: date) -> list[StockBar]:
        params = {
            "period1": str(day_start_timestamp(from_date)),
            "period2": str(day_start_timestamp(to_date + timedelta(days=1))),
            "interval": "1d",
        }
        response = requests.get(f"{self.BASE_URL}/{ticker}", params=params,
                                headers={"User-Agent": self._user_agent}, timeout=20)
        response.raise_for_status()
        result = response.json()["chart"]["result"][0]
        quotes = result["indicators"]["quote"][0]
        bars = []
        for i, ts in enumerate(result.get("timestamp", [])):
            values = (quotes["open"][i], quotes["high"][i],
                      quotes["low"][i], quotes["close"][i])
            if any(v is None for v in values):
                continue
            day = timestamp_day(int(ts))
            bars.append(StockBar(
                stock=ticker.upper(),
                timestamp=day_start_timestamp(day),
                open=float(values[0]),
                high=float(values[1]),
                low=float(values[2]),
                close=float(values[3]),
                volume=int(quotes["volume"][i] or 0),
            ))
        bars.sort(key=lambda b: b.timestamp)
        return bars


class MarketCrawler:
    def __init__(
        self,
        client: BackendClient,
        provider: MarketDataProvider,
        watermarks: WatermarkStore | None = None,
        clock: Clock | None = None,
    ):
        self._client = client
        self._provider = provider
        self._watermarks = watermarks if watermarks is not None else WatermarkStore(None)
        self._clock = clock if clock is not None else SystemClock()

    def poll_tickers(self) -> list[str]:
        return self._client.tracked_tickers()

    def fetch_and_submit(self, ticker: str) -> int:
        """One ticker's catch-up: fetch past the watermark, submit, advance."""
        watermark = self._watermarks.get(ticker)
        from_date = watermark + timedelta(days=1) if watermark else BACKFILL_START
        to_date = utc_day(self._clock)
        if from_date > to_date:
            return 0
        bars = self._provider.fetch_daily_bars(ticker, from_date, to_date)
        if not bars:
            return 0
        for start in range(0, len(bars), SUBMIT_CHUNK_SIZE):
            chunk = bars[start:start + SUBMIT_CHUNK_SIZE]
            self._client.submit_stock_bars([b.to_json_dict() for b in chunk])
        self._watermarks.commit(ticker, timestamp_day(bars[-1].timestamp))
        return len(bars)

    def run_cycle(self) -> MarketCycleReport:
        report = MarketCycleReport()
        try:
            tickers = self.poll_tickers()
        except BackendError as exc:
            report.errors.append(("*", f"poll failed: {exc}"))
            return report
        report.tickersPolled = len(tickers)
        for ticker in tickers:
            try:
                report.barsSubmitted += self.fetch_and_submit(ticker)
            except (BackendError, requests.RequestException, ValueError) as exc:
                # watermark untouched: the next cycle refetches, upsert dedupes
                report.errors.append((ticker, str(exc)))
        return report

    def run_forever(self, interval: float = DEFAULT_POLL_INTERVAL,
                    max_cycles: int | None = None) -> list[MarketCycleReport]:
        reports = []
        failures = 0
        cycles = 0
        while max_cycles is None or cycles < max_cycles:
            report = self.run_cycle()
            reports.append(report)
            cycles += 1
            logger.info("cycle %d: polled=%d bars=%d errors=%d", cycles,
                        report.tickersPolled, report.barsSubmitted, len(report.errors))
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
