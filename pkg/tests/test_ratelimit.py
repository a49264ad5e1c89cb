import threading

import pytest

from sentimarket.crawlers.clock import VirtualClock
from sentimarket.crawlers.ratelimit import RateBudget


def windows_ok(times, capacity=60, window=60.0):
    """No half-open window of `window` seconds holds more than `capacity`."""
    times = sorted(times)
    for i in range(len(times) - capacity):
        if times[i + capacity] - times[i] < window:
            return False
    return True


def test_burst_up_to_capacity_grants_immediately():
    clock = VirtualClock()
    budget = RateBudget(clock, capacity=60, refill_interval=60)
    for _ in range(60):
        budget.acquire()
    assert clock.now() == 0.0  # nobody waited


def test_61st_acquire_waits_for_window():
    clock = VirtualClock()
    budget = RateBudget(clock, capacity=60, refill_interval=60)
    for _ in range(60):
        budget.acquire()
    granted_at = budget.acquire()
    assert granted_at >= 60.0


def test_idle_window_fully_restores():
    clock = VirtualClock()
    budget = RateBudget(clock, capacity=60, refill_interval=60)
    for _ in range(60):
        budget.acquire()
    clock.advance(60)
    assert budget.available == 60


def test_available_counts_down():
    clock = VirtualClock()
    budget = RateBudget(clock, capacity=3, refill_interval=10)
    assert budget.available == 3
    budget.acquire()
    budget.acquire()
    assert budget.available == 1


def test_staggered_refill():
    clock = VirtualClock()
    budget = RateBudget(clock, capacity=2, refill_interval=10)
    budget.acquire()          # t=0
    clock.advance(4)
    budget.acquire()          # t=4
    granted = budget.acquire()  # must wait until t=10 (first token back)
    assert granted == pytest.approx(10.0)


def test_sliding_window_holds_under_sustained_load():
    clock = VirtualClock()
    budget = RateBudget(clock, capacity=60, refill_interval=60)
    times = [budget.acquire() for _ in range(500)]
    assert windows_ok(times)


def test_thread_safety_under_concurrent_acquire():
    clock = VirtualClock()
    budget = RateBudget(clock, capacity=10, refill_interval=5)
    times = []
    lock = threading.Lock()

    def worker():
        for _ in range(20):
            granted = budget.acquire()
            with lock:
                times.append(granted)

    threads = [threading.Thread(target=worker) for _ in range(5)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(times) == 100
    assert windows_ok(times, capacity=10, window=5.0)


def test_invalid_parameters_rejected():
    with pytest.raises(ValueError):
        RateBudget(VirtualClock(), capacity=0)
    with pytest.raises(ValueError):
        RateBudget(VirtualClock(), refill_interval=0)
