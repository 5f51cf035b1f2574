"""Offline range-query primitives used by the independent-pair search.

Both routines answer "is there an item, other than the query's own, that
satisfies two range conditions" and return the first hit with the
smallest request index as witness.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Sequence


class Fenwick:
    def __init__(self, size: int):
        self.size = size
        self.tree = [0] * (size + 1)

    def add(self, i: int, delta: int) -> None:
        i += 1
        while i <= self.size:
            self.tree[i] += delta
            i += i & -i

    def prefix(self, i: int) -> int:
        """Sum over positions ``0..i-1``."""
        total = 0
        while i > 0:
            total += self.tree[i]
            i -= i & -i
        return total

    def range(self, lo: int, hi: int) -> int:
        """Sum over positions ``lo..hi-1``."""
        return self.prefix(hi) - self.prefix(lo) if hi > lo else 0


def points_in_boxes(
    points: Sequence[tuple[int, int, int]],
    boxes: Sequence[tuple[int, int, int, int, int]],
) -> tuple[int, int] | None:
    """Find a box containing a point with a different index.

    ``points`` are ``(x, y, idx)``; ``boxes`` are ``(x1, x2, y1, y2, qidx)``
    with closed bounds.  Counting is an offline sweep on ``x`` with a
    Fenwick tree on compressed ``y``; the witness is recovered by a scan.
    Returns ``(qidx, idx)`` for the smallest ``qidx`` that has a hit.
    """
    if not points or not boxes:
        return None
    ys = sorted({p[1] for p in points})
    fen = Fenwick(len(ys))
    pts = sorted(points)
    own = {idx: (x, y) for x, y, idx in points}

    def y_range(y1: int, y2: int) -> tuple[int, int]:
        return bisect_left(ys, y1), bisect_right(ys, y2)

    # each box contributes count(x <= x2) - count(x <= x1 - 1)
    events = []
    for b, (x1, x2, y1, y2, _) in enumerate(boxes):
        events.append((x1 - 1, b, -1))
        events.append((x2, b, 1))
    events.sort()
    counts = [0] * len(boxes)
    p = 0
    for x, b, sign in events:
        while p < len(pts) and pts[p][0] <= x:
            fen.add(bisect_left(ys, pts[p][1]), 1)
            p += 1
        lo, hi = y_range(boxes[b][2], boxes[b][3])
        counts[b] += sign * fen.range(lo, hi)

    hits = []
    for b, (x1, x2, y1, y2, qidx) in enumerate(boxes):
        c = counts[b]
        if qidx in own:
            ox, oy = own[qidx]
            if x1 <= ox <= x2 and y1 <= oy <= y2:
                c -= 1
        if c > 0:
            hits.append((qidx, b))
    if not hits:
        return None
    qidx, b = min(hits)
    x1, x2, y1, y2, _ = boxes[b]
    witness = min(
        idx for x, y, idx in points if idx != qidx and x1 <= x <= x2 and y1 <= y <= y2
    )
    return qidx, witness


def stabbing_sweep(
    intervals: Sequence[tuple[int, int, int, int]],
    queries: Sequence[tuple[int, int, int, int]],
) -> tuple[int, int] | None:
    """Sweep positions, keeping the intervals that cover the current one.

    ``intervals`` are ``(lo, hi, key, idx)``, active for ``lo <= pos <= hi``;
    ``queries`` are ``(pos, key_lo, key_hi, qidx)``.  At each query the
    active intervals are searched for a key in ``[key_lo, key_hi]``.
    Returns ``(qidx, idx)`` for the first query (in sweep order) with a hit.
    """
    if not intervals or not queries:
        return None
    keys = sorted({iv[2] for iv in intervals})
    fen = Fenwick(len(keys))
    active: dict[int, int] = {}
    # event order at one position: insertions, then queries; removals are
    # scheduled at hi + 1 and processed first
    events = []
    for k, (lo, hi, key, idx) in enumerate(intervals):
        events.append((lo, 1, k))
        events.append((hi + 1, 0, k))
    for k, q in enumerate(queries):
        events.append((q[0], 2, k))
    events.sort()
    for _, kind, k in events:
        if kind == 0:
            lo, hi, key, idx = intervals[k]
            fen.add(bisect_left(keys, key), -1)
            active[idx] -= 1
            if not active[idx]:
                del active[idx]
        elif kind == 1:
            lo, hi, key, idx = intervals[k]
            fen.add(bisect_left(keys, key), 1)
            active[idx] = active.get(idx, 0) + 1
        else:
            pos, klo, khi, qidx = queries[k]
            a, b = bisect_left(keys, klo), bisect_right(keys, khi)
            c = fen.range(a, b)
            if c == 0:
                continue
            if qidx in active:
                c -= sum(
                    1
                    for lo, hi, key, idx in intervals
                    if idx == qidx and lo <= pos <= hi and klo <= key <= khi
                )
            if c > 0:
                witness = min(
                    idx
                    for lo, hi, key, idx in intervals
                    if idx != qidx and lo <= pos <= hi and klo <= key <= khi
                )
                return qidx, witness
    return None
