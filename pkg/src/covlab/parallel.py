"""Deterministic fan-out helper.

Results are collected in submission order, so any operation built on
``deterministic_map`` returns the same value for every thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

__all__ = ["deterministic_map"]


def deterministic_map(fn, items, threads: int = 1) -> list:
    """Apply fn to each item, preserving item order in the result list."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))
