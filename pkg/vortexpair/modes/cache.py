"""
MIT License

Copyright (c) 2024-present japandotorg

Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in all
copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
SOFTWARE.
"""

from __future__ import annotations

import logging
import threading
from typing import Callable, Dict, Generic, Hashable, Protocol, Tuple, TypeVar

__all__ = ("CacheProtocol", "OperatorCache", "operator_cache")

log: logging.Logger = logging.getLogger("seina.vortexpair.modes.cache")

_T = TypeVar("_T")


class CacheProtocol(Protocol):
    def get_or_build(self, key: Hashable, factory: Callable[[], object]) -> object: ...

    def clear(self) -> None: ...


class OperatorCache(CacheProtocol, Generic[_T]):
    """
    Factorized radial operators keyed by ``(kind, n, extra, grid key)``.

    Each key is built exactly once; concurrent callers asking for the same key
    wait on that key's lock instead of factorizing again.
    """

    __slots__: Tuple[str, ...] = ("_entries", "_locks", "_guard")

    def __init__(self) -> None:
        self._entries: Dict[Hashable, _T] = {}
        self._locks: Dict[Hashable, threading.Lock] = {}
        self._guard: threading.Lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._entries

    def get_or_build(self, key: Hashable, factory: Callable[[], _T]) -> _T:
        entry = self._entries.get(key)
        if entry is not None:
            return entry
        with self._guard:
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            entry = self._entries.get(key)
            if entry is None:
                log.debug("Factorizing radial operator %s.", key)
                entry = factory()
                self._entries[key] = entry
        return entry

    def clear(self) -> None:
        with self._guard:
            self._entries.clear()
            self._locks.clear()


operator_cache: OperatorCache[object] = OperatorCache()
