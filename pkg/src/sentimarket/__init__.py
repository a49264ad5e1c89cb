"""Subreddit sentiment vs. stock price platform."""

__version__ = "0.1.0"
