"""
A small thread-safe memo table with least-recently-used eviction.

Entries are kept in access order; once the table grows past its capacity the
stalest entry is dropped. Lookups refresh an entry's position.
"""

from collections import OrderedDict
from collections.abc import Callable, Iterator, MutableMapping
from threading import RLock
from typing import Generic, TypeVar

K = TypeVar("K")
V = TypeVar("V")


class MemoTable(Generic[K, V], MutableMapping[K, V]):
    """
    A thread-safe bounded mapping used to cache pure computations.

    - Capacity is fixed at construction; inserting beyond it evicts the
      least recently used key.
    - ``get_or_compute`` runs the factory outside the lock so that slow
      computations do not serialize readers; the first stored value wins.
    """

    def __init__(self, max_entries: int = 4096):
        """
        Initialize the table.

        Args:
            max_entries: Maximum number of entries retained. Must be positive.
        """
        if max_entries < 1:
            raise ValueError("max_entries must be a positive integer")
        self._entries: OrderedDict[K, V] = OrderedDict()
        self._max_entries = max_entries
        self._lock = RLock()
        self.hits = 0
        self.misses = 0

    def __getitem__(self, key: K) -> V:
        """
        Return the cached value and mark it as recently used.

        Raises:
            KeyError: If the key is absent (never stored or already evicted).
        """
        with self._lock:
            try:
                value = self._entries[key]
            except KeyError:
                raise KeyError(f"{key} not found")
            self._entries.move_to_end(key)
            return value

    def __setitem__(self, key: K, value: V) -> None:
        with self._lock:
            self._entries[key] = value
            self._entries.move_to_end(key)
            while len(self._entries) > self._max_entries:
                self._entries.popitem(last=False)

    def __delitem__(self, key: K) -> None:
        """Remove the key if present; missing keys are ignored."""
        with self._lock:
            self._entries.pop(key, None)

    def __iter__(self) -> Iterator[K]:
        with self._lock:
            return iter(list(self._entries))

    def __len__(self) -> int:
        return len(self._entries)

    def get_or_compute(self, key: K, factory: Callable[[], V]) -> V:
        """
        Return the cached value for ``key``, computing and storing it on a miss.

        Args:
            key: Cache key; must be hashable.
            factory: Zero-argument callable producing the value.

        Returns:
            The cached or freshly computed value.
        """
        with self._lock:
            if key in self._entries:
                self.hits += 1
                self._entries.move_to_end(key)
                return self._entries[key]
            self.misses += 1
        value = factory()
        with self._lock:
            if key in self._entries:
                return self._entries[key]
            self[key] = value
            return value
