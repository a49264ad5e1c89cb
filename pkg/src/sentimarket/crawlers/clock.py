"""Injectable time source so periodic jobs are testable in milliseconds.

All crawler timing (poll intervals, the rate window, backoff) flows
through a Clock; tests drive a VirtualClock instead of waiting.
"""

from __future__ import annotations

import threading
import time
from datetime import date, datetime, timezone
from typing import Protocol


class Clock(Protocol):
    def now(self) -> float:
        """Seconds since the epoch."""

    def sleep(self, seconds: float) -> None: ...


class SystemClock:
    def now(self) -> float:
        return time.time()

    def sleep(self, seconds: float) -> None:
        if seconds > 0:
            time.sleep(seconds)


class VirtualClock:
    """Deterministic clock: sleep() advances time instantly.

    Thread-safe; sleeps never block, so simulated schedules run as fast
    as the CPU allows while preserving ordering arithmetic.
    """

    def __init__(self, start: float = 0.0):
        self._now = start
        self._lock = threading.Lock()

    def now(self) -> float:
        with self._lock:
            return self._now

    def sleep(self, seconds: float) -> None:
        if seconds > 0:
            with self._lock:
                self._now += seconds

    def advance(self, seconds: float) -> None:
        self.sleep(seconds)


def utc_day(clock: Clock) -> date:
    """Calendar day (UTC) of the clock's current instant."""
    return datetime.fromtimestamp(clock.now(), tz=timezone.utc).date()
