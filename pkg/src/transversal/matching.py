"""Bipartite matching between "left" items and "right" items (colours).

Left item ``i`` is adjacent to the right items in the bitmask ``adj[i]``.
:func:`max_matching` runs Hopcroft-Karp; :class:`IncrementalMatching`
grows a matching one left item at a time and supports cheap rollback,
which is what the backtracking solver needs.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .graph import bits

UNMATCHED = -1


def max_matching(adj: Sequence[int], n_right: int) -> list[int]:
    """Maximum matching; returns ``match[i]`` (right item or ``UNMATCHED``)."""
    n_left = len(adj)
    match_l = [UNMATCHED] * n_left
    match_r = [UNMATCHED] * n_right
    inf = n_left + 1
    while True:
        # BFS layers from the free left vertices
        dist = [inf] * n_left
        queue = deque()
        for i in range(n_left):
            if match_l[i] == UNMATCHED:
                dist[i] = 0
                queue.append(i)
        found = False
        while queue:
            i = queue.popleft()
            for r in bits(adj[i]):
                j = match_r[r]
                if j == UNMATCHED:
                    found = True
                elif dist[j] == inf:
                    dist[j] = dist[i] + 1
                    queue.append(j)
        if not found:
            return match_l

        def dfs(i: int) -> bool:
            for r in bits(adj[i]):
                j = match_r[r]
                if j == UNMATCHED or (dist[j] == dist[i] + 1 and dfs(j)):
                    match_l[i] = r
                    match_r[r] = i
                    return True
            dist[i] = inf
            return False

        for i in range(n_left):
            if match_l[i] == UNMATCHED:
                dfs(i)


def hall_violator(adj: Sequence[int], match: Sequence[int]) -> tuple[list[int], int]:
    """Deficient left set certifying that ``match`` cannot be made perfect.

    ``match`` must be maximum.  Returns the left items reachable by
    alternating paths from an unmatched left item, and the mask of their
    joint neighbourhood, which is strictly smaller than the set.
    """
    match_r = {r: i for i, r in enumerate(match) if r != UNMATCHED}
    start = [i for i, r in enumerate(match) if r == UNMATCHED]
    if not start:
        raise ValueError("matching is perfect; there is no Hall violator")
    seen = {start[0]}
    queue = deque([start[0]])
    nbrs = 0
    while queue:
        i = queue.popleft()
        new = adj[i] & ~nbrs
        nbrs |= adj[i]
        for r in bits(new):
            j = match_r.get(r)
            if j is not None and j not in seen:
                seen.add(j)
                queue.append(j)
    return sorted(seen), nbrs


class IncrementalMatching:
    """Matching that stays maximum as left items are appended.

    ``add(mask)`` appends a left item and tries one augmenting path; the
    item is kept even when it stays unmatched, so callers decide whether
    to roll back via :meth:`snapshot` / :meth:`restore`.
    """

    def __init__(self, n_right: int):
        self.adj: list[int] = []
        self.match_l: list[int] = []
        self.match_r: list[int] = [UNMATCHED] * n_right
        self.augmentations = 0

    def __len__(self) -> int:
        return len(self.adj)

    def _augment(self, i: int, visited: list[int]) -> bool:
        avail = self.adj[i] & ~visited[0]
        # prefer a free right item before recursing
        for r in bits(avail):
            if self.match_r[r] == UNMATCHED:
                self.match_l[i] = r
                self.match_r[r] = i
                return True
        for r in bits(avail):
            if visited[0] >> r & 1:
                continue
            visited[0] |= 1 << r
            if self._augment(self.match_r[r], visited):
                self.match_l[i] = r
                self.match_r[r] = i
                return True
        return False

    def add(self, mask: int) -> bool:
        self.adj.append(mask)
        self.match_l.append(UNMATCHED)
        self.augmentations += 1
        return self._augment(len(self.adj) - 1, [0])

    def snapshot(self) -> tuple[int, list[int]]:
        return len(self.adj), self.match_r.copy()

    def restore(self, snap: tuple[int, list[int]]) -> None:
        size, match_r = snap
        del self.adj[size:]
        del self.match_l[size:]
        self.match_r = match_r.copy()
        for i in range(size):
            self.match_l[i] = UNMATCHED
        for r, i in enumerate(match_r):
            if i != UNMATCHED:
                self.match_l[i] = r
