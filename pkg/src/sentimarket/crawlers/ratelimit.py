"""Sliding-window request budget for upstream API calls.

Grants at most `capacity` acquisitions in any window of `refill_interval`
seconds: each consumed token returns one full window after it was taken.
A fixed-window or steadily refilling bucket would allow bursts of up to
2x the limit inside a sliding window, so the grant log is authoritative.
"""

from __future__ import annotations

import threading
from collections import deque

from .clock import Clock


class RateBudget:
    def __init__(self, clock: Clock, capacity: int = 60, refill_interval: float = 60.0):
        if capacity <= 0 or refill_interval <= 0:
            raise ValueError("capacity and refill_interval must be positive")
        self.capacity = capacity
        self.refill_interval = refill_interval
        self._clock = clock
        self._grants: deque[float] = deque()
        self._lock = threading.Lock()

    @property
    def available(self) -> int:
        """Tokens grantable right now without waiting."""
        with self._lock:
            self._expire(self._clock.now())
            return self.capacity - len(self._grants)

    def _expire(self, now: float) -> None:
        while self._grants and now - self._grants[0] >= self.refill_interval:
            self._grants.popleft()

    def acquire(self) -> float:
        """Take one token, sleeping on the clock until one is free.

        Returns the grant time. Safe for concurrent callers; waiting is
        the contract, there is no failure path.
        """
        while True:
            with self._lock:
                now = self._clock.now()
                self._expire(now)
                if len(self._grants) < self.capacity:
                    self._grants.append(now)
                    return now
                wait = self._grants[0] + self.refill_interval - now
            self._clock.sleep(max(wait, 1e-6))
