"""Cache module memoising solver results during scans and bisections."""

import threading
from typing import Any, Callable, Hashable, Optional
import cachetools


class Cache:
    """
    Cache implementation using TTLCache for storing solver results.

    Scans and critical-value bisections revisit the same (branch, k, tau)
    triples; the cache keeps those results and reports hits and misses to
    an optional metrics manager. Access is serialised by a lock so scan
    workers can share one instance.
    """

    def __init__(self, maxsize: int = 256, ttl: int = 3600, metrics_manager=None) -> None:
        """
        Initialize the Cache.

        Args:
            maxsize (int): Maximum number of items in cache (default: 256)
            ttl (int): Time-to-live in seconds (default: 3600)
            metrics_manager: Optional MetricsManager for hit/miss counters (default: None)
        """
        self.cache = cachetools.TTLCache(maxsize=maxsize, ttl=ttl)
        self.metrics_manager = metrics_manager
        self._lock = threading.Lock()

    def get(self, key: Hashable) -> Optional[Any]:
        """
        Retrieve cached value for given key if it exists and is not expired.

        Args:
            key (Hashable): Cache key to look up

        Returns:
            Optional[Any]: Cached value if found and valid, None otherwise
        """
        with self._lock:
            try:
                value = self.cache[key]
            except KeyError:
                self._count("cache_misses")
                return None
        self._count("cache_hits")
        return value

    def set(self, key: Hashable, value: Any) -> None:
        """
        Store value in cache with given key.

        Args:
            key (Hashable): Cache key to store value under
            value (Any): Value to cache
        """
        with self._lock:
            self.cache[key] = value

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """
        Return the cached value for key, computing and storing it on a miss.

        Args:
            key (Hashable): Cache key
            compute (Callable[[], Any]): Producer called on a miss

        Returns:
            Any: Cached or freshly computed value
        """
        value = self.get(key)
        if value is None:
            value = compute()
            self.set(key, value)
        return value

    def invalidate(self, key: Hashable) -> None:
        """
        Remove given key from cache.

        Args:
            key (Hashable): Cache key to remove
        """
        with self._lock:
            self.cache.pop(key, None)

    def _count(self, metric: str) -> None:
        if self.metrics_manager is not None:
            self.metrics_manager.increment(metric)
