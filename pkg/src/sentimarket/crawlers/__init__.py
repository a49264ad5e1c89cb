from .clock import Clock, SystemClock, VirtualClock, utc_day
from .market import (
    FixtureMarketProvider,
    MarketCrawler,
    MarketCycleReport,
    WatermarkStore,
    YahooFinanceProvider,
)
from .ratelimit import RateBudget
from .reddit import (
    CommentSource,
    CrawlCycleReport,
    CursorStore,
    FixtureCommentSource,
    LiveRedditSource,
    RedditCrawler,
)

__all__ = [
    "Clock",
    "SystemClock",
    "VirtualClock",
    "utc_day",
    "FixtureMarketProvider",
    "MarketCrawler",
    "MarketCycleReport",
    "WatermarkStore",
    "YahooFinanceProvider",
    "RateBudget",
    "CommentSource",
    "CrawlCycleReport",
    "CursorStore",
    "FixtureCommentSource",
    "LiveRedditSource",
    "RedditCrawler",
]
