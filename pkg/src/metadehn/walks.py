"""Shortest walks in the Cayley graph of Z^k (the l1 grid).

``walk_length`` gives the length of a shortest walk that starts at the origin,
visits every point of a finite set, and stops at a given end point.  For k = 1
this is a closed form; otherwise a Held-Karp subset dynamic program is run
when the set is small, and a doubled spanning-tree tour (an upper bound) when
it is not.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

DEFAULT_EXACT_LIMIT = 14


class Walk(NamedTuple):
    length: int
    exact: bool


def l1(p, q) -> int:
    return sum(abs(a - b) for a, b in zip(p, q))


def _line_walk(points: frozenset, end: int) -> int:
    lo = min(min(points, default=0), 0)
    hi = max(max(points, default=0), 0)
    left_first = -lo + (hi - lo) + abs(hi - end)
    right_first = hi + (hi - lo) + abs(end - lo)
    return min(left_first, right_first)


def _held_karp(pts: list, origin: tuple, end: tuple) -> int:
    n = len(pts)
    D = np.array([[l1(p, q) for q in pts] for p in pts], dtype=np.int64)
    start = np.array([l1(origin, p) for p in pts], dtype=np.int64)
    finish = np.array([l1(p, end) for p in pts], dtype=np.int64)
    inf = np.iinfo(np.int64).max // 4
    full = 1 << n
    dp = np.full((full, n), inf, dtype=np.int64)
    for j in range(n):
        dp[1 << j, j] = start[j]
    masks = np.arange(full)
    popcount = np.array([bin(x).count("1") for x in range(full)])
    for size in range(2, n + 1):
        layer = masks[popcount == size]
        for j in range(n):
            bit = 1 << j
            sel = layer[(layer & bit) != 0]
            if sel.size == 0:
                continue
            prev = dp[sel ^ bit]
            dp[sel, j] = (prev + D[:, j]).min(axis=1)
    return int((dp[full - 1] + finish).min())


def _tree_tour(pts: list, origin: tuple, end: tuple) -> int:
    """Preorder walk of an l1 minimum spanning tree rooted at the origin."""
    nodes = [origin] + pts
    n = len(nodes)
    in_tree = [False] * n
    best = [None] * n
    parent = [-1] * n
    best[0] = 0
    children: list = [[] for _ in range(n)]
    for _ in range(n):
        u = min((i for i in range(n) if not in_tree[i] and best[i] is not None), key=lambda i: best[i])
        in_tree[u] = True
        if parent[u] >= 0:
            children[parent[u]].append(u)
        for v in range(n):
            if not in_tree[v]:
                d = l1(nodes[u], nodes[v])
                if best[v] is None or d < best[v]:
                    best[v], parent[v] = d, u
    order = []
    stack = [0]
    while stack:
        u = stack.pop()
        order.append(u)
        stack.extend(reversed(children[u]))
    length = sum(l1(nodes[a], nodes[b]) for a, b in zip(order, order[1:]))
    return length + l1(nodes[order[-1]], end)


@lru_cache(maxsize=65536)
def _walk_cached(points: frozenset, end: tuple, exact_limit: int) -> Walk:
    k = len(end)
    origin = (0,) * k
    if k == 1:
        return Walk(_line_walk(frozenset(p[0] for p in points), end[0]), True)
    pts = sorted(p for p in points if p != origin and p != end)
    if not pts:
        return Walk(l1(origin, end), True)
    if len(pts) == 1:
        return Walk(l1(origin, pts[0]) + l1(pts[0], end), True)
    if len(pts) <= exact_limit:
        return Walk(_held_karp(pts, origin, end), True)
    return Walk(_tree_tour(pts, origin, end), False)


def walk_length(points: Iterable, end=None, k: int | None = None,
                exact_limit: int = DEFAULT_EXACT_LIMIT) -> Walk:
    """Shortest walk from the origin through ``points`` finishing at ``end``.

    ``end`` defaults to the origin (a closed loop).  ``exact`` is False when the
    point set exceeded ``exact_limit`` and the length is only an upper bound.
    """
    pts = frozenset(tuple(p) for p in points)
    if end is None:
        if k is None:
            k = len(next(iter(pts))) if pts else 1
        end = (0,) * k
    end = tuple(end)
    if any(len(p) != len(end) for p in pts):
        raise ValueError("points and end point have different ranks")
    return _walk_cached(pts, end, exact_limit)


def reach(points: Iterable, k: int | None = None, exact_limit: int = DEFAULT_EXACT_LIMIT) -> int:
    """Length of a shortest closed walk from the origin through all ``points``."""
    return walk_length(points, None, k, exact_limit).length
