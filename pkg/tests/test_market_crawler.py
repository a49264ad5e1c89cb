from datetime import date

import pytest

from conftest import TEST_KEYS, mock_backend  # noqa: F401
from sentimarket.backend.client import BackendClient, BackendError
from sentimarket.crawlers.clock import VirtualClock, utc_day
from sentimarket.crawlers.market import (
    FixtureMarketProvider,
    MarketCrawler,
    WatermarkStore,
    day_start_timestamp,
    timestamp_day,
)

FIXTURE_DAYS = ["2021-01-04", "2021-01-05", "2021-01-06", "2021-01-07", "2021-01-08"]


def write_csv(tmp_path, ticker="GME", days=FIXTURE_DAYS):
    lines = ["date,open,high,low,close,volume"]
    for i, day in enumerate(days):
        close = 10.0 + i
        lines.append(f"{day},{close - 0.5},{close + 1.0},{close - 1.0},{close},{1000 + i}")
    (tmp_path / f"{ticker}.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return tmp_path


def clock_at(day: str) -> VirtualClock:
    return VirtualClock(start=float(day_start_timestamp(date.fromisoformat(day)) + 3600))


def make_crawler(url, provider_dir, clock, watermarks=None):
    return MarketCrawler(
        client=BackendClient(url, access_key=TEST_KEYS["market_crawler"]),
        provider=FixtureMarketProvider(provider_dir),
        watermarks=watermarks or WatermarkStore(None),
        clock=clock,
    )


class TestTimestamps:
    def test_day_start_is_midnight_utc(self):
        ts = day_start_timestamp(date(2021, 1, 4))
        assert ts == 1609718400
        assert timestamp_day(ts) == date(2021, 1, 4)

    def test_utc_day_from_clock(self):
        assert utc_day(clock_at("2021-01-06")) == date(2021, 1, 6)


class TestFixtureProvider:
    def test_reads_window_sorted(self, tmp_path):
        provider = FixtureMarketProvider(write_csv(tmp_path))
        bars = provider.fetch_daily_bars("GME", date(2021, 1, 5), date(2021, 1, 7))
        assert [timestamp_day(b.timestamp).isoformat() for b in bars] == [
            "2021-01-05", "2021-01-06", "2021-01-07"]
        assert bars[0].close == 11.0

    def test_missing_ticker_is_empty(self, tmp_path):
        provider = FixtureMarketProvider(write_csv(tmp_path))
        assert provider.fetch_daily_bars("AMC", date(2021, 1, 1), date(2021, 1, 9)) == []

    def test_header_required(self, tmp_path):
        (tmp_path / "BAD.csv").write_text("open,close\n1,2\n", encoding="utf-8")
        provider = FixtureMarketProvider(tmp_path)
        with pytest.raises(ValueError, match="header"):
            provider.fetch_daily_bars("BAD", date(2021, 1, 1), date(2021, 1, 9))

    def test_case_insensitive_filename(self, tmp_path):
        write_csv(tmp_path, ticker="GME")
        provider = FixtureMarketProvider(tmp_path)
        assert provider.fetch_daily_bars("gme", date(2021, 1, 4), date(2021, 1, 8))


class TestCrawlCycles:
    def test_backfill_then_watermark(self, tmp_path, mock_backend):  # noqa: F811
        url, services = mock_backend
        BackendClient(url, access_key=TEST_KEYS["admin"]).track_ticker("GME")
        watermarks = WatermarkStore(tmp_path / "wm.json")
        crawler = make_crawler(url, write_csv(tmp_path), clock_at("2021-01-08"), watermarks)

        report = crawler.run_cycle()
        assert report.barsSubmitted == 5
        assert watermarks.get("GME") == date(2021, 1, 8)

        # nothing new on re-run
        assert crawler.run_cycle().barsSubmitted == 0

    def test_clock_bounds_fetch_window(self, tmp_path, mock_backend):  # noqa: F811
        url, services = mock_backend
        BackendClient(url, access_key=TEST_KEYS["admin"]).track_ticker("GME")
        crawler = make_crawler(url, write_csv(tmp_path), clock_at("2021-01-06"))
        assert crawler.run_cycle().barsSubmitted == 3  # days 4..6 only

    def test_no_gaps_across_cycles(self, tmp_path, mock_backend):  # noqa: F811
        url, services = mock_backend
        BackendClient(url, access_key=TEST_KEYS["admin"]).track_ticker("GME")
        clock = clock_at("2021-01-04")
        watermarks = WatermarkStore(tmp_path / "wm.json")
        crawler = make_crawler(url, write_csv(tmp_path), clock, watermarks)
        total = 0
        for _ in range(5):
            total += crawler.run_cycle().barsSubmitted
            clock.advance(86400.0)
        assert total == 5
        series = services.store.stock_series("GME", 1, 2_000_000_000)
        assert [timestamp_day(b.timestamp).isoformat() for b in series] == FIXTURE_DAYS

    def test_replay_is_idempotent(self, tmp_path, mock_backend):  # noqa: F811
        url, services = mock_backend
        BackendClient(url, access_key=TEST_KEYS["admin"]).track_ticker("GME")
        fixture_dir = write_csv(tmp_path)
        crawler = make_crawler(url, fixture_dir, clock_at("2021-01-08"))
        crawler.run_cycle()
        # fresh watermark store: the whole history is re-fetched and re-sent
        crawler2 = make_crawler(url, fixture_dir, clock_at("2021-01-08"))
        assert crawler2.run_cycle().barsSubmitted == 5
        series = services.store.stock_series("GME", 1, 2_000_000_000)
        assert len(series) == 5

    def test_multiple_tickers(self, tmp_path, mock_backend):  # noqa: F811
        url, services = mock_backend
        admin = BackendClient(url, access_key=TEST_KEYS["admin"])
        admin.track_ticker("GME")
        admin.track_ticker("AMC")
        write_csv(tmp_path, ticker="GME")
        write_csv(tmp_path, ticker="AMC", days=FIXTURE_DAYS[:3])
        crawler = make_crawler(url, tmp_path, clock_at("2021-01-08"))
        report = crawler.run_cycle()
        assert report.tickersPolled == 2
        assert report.barsSubmitted == 8

    def test_provider_failure_keeps_watermark(self, tmp_path, mock_backend):  # noqa: F811
        url, _ = mock_backend
        BackendClient(url, access_key=TEST_KEYS["admin"]).track_ticker("GME")
        watermarks = WatermarkStore(None)

        class ExplodingProvider:
            def fetch_daily_bars(self, ticker, from_date, to_date):
                raise ValueError("provider offline")

        crawler = MarketCrawler(
            client=BackendClient(url, access_key=TEST_KEYS["market_crawler"]),
            provider=ExplodingProvider(),
            watermarks=watermarks,
            clock=clock_at("2021-01-08"),
        )
        report = crawler.run_cycle()
        assert report.errors and report.errors[0][0] == "GME"
        assert watermarks.get("GME") is None

    def test_backend_down_skips_cycle(self):
        crawler = MarketCrawler(
            client=BackendClient("http://127.0.0.1:1",
                                 access_key=TEST_KEYS["market_crawler"]),
            provider=FixtureMarketProvider("."),
            clock=clock_at("2021-01-08"),
        )
        report = crawler.run_cycle()
        assert report.errors and report.errors[0][0] == "*"

    def test_run_forever_backoff(self):
        clock = clock_at("2021-01-08")
        start = clock.now()

        class DeadClient:
            def tracked_tickers(self):
                raise BackendError("down")

        crawler = MarketCrawler(client=DeadClient(), provider=FixtureMarketProvider("."),
                                clock=clock)
        crawler.run_forever(interval=3600, max_cycles=3)
        assert clock.now() - start == pytest.approx(15.0)  # 5 + 10
