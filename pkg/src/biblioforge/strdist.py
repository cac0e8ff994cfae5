"""Unit-cost edit distances.

Strings are compared code point by code point; no case folding happens here.
The vertical string ``x`` indexes matrix rows and the horizontal string ``y``
indexes columns, so ``cell(i, j)`` is the cost of turning ``x[:i]`` into a
string ending at ``y[j-1]``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Optional

Variant = Literal["standard", "free_prefix"]
VARIANTS = ("standard", "free_prefix")


@dataclass(frozen=True)
class DistanceMatrix:
    """Full dynamic-programming table for a pair of strings."""

    x: str
    y: str
    variant: str
    cells: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0])

    def cell(self, i: int, j: int) -> int:
        return self.cells[i][j]

    @property
    def last_row(self) -> tuple[int, ...]:
        return self.cells[-1]

    def to_csv(self) -> str:
        """Render with ``y`` across the top and ``x`` down the side."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["", ""] + list(self.y))
        for i, row in enumerate(self.cells):
            writer.writerow([self.x[i - 1] if i else ""] + list(row))
        return buf.getvalue()


def dp_matrix(x: str, y: str, variant: Variant = "standard") -> DistanceMatrix:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    n = len(y)
    if variant == "standard":
        prev = list(range(n + 1))
    else:
        prev = [0] * (n + 1)
    rows = [tuple(prev)]
    for i, cx in enumerate(x, 1):
        cur = [i]
        for j, cy in enumerate(y, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (cx != cy)))
        rows.append(tuple(cur))
        prev = cur
    return DistanceMatrix(x, y, variant, tuple(rows))


@lru_cache(maxsize=4096)
def _match_masks(pattern: str) -> dict[str, int]:
    masks: dict[str, int] = {}
    for i, ch in enumerate(pattern):
        masks[ch] = masks.get(ch, 0) | (1 << i)
    return masks


def _bitparallel(x: str, y: str) -> int:
    # Myers/Hyyro bit-vector recurrence over the columns of the standard matrix.
    m = len(x)
    peq = _match_masks(x)
    mask = (1 << m) - 1
    high = 1 << (m - 1)
    pv, mv, score = mask, 0, m
    for ch in y:
        eq = peq.get(ch, 0)
        xv = eq | mv
        xh = (((eq & pv) + pv) ^ pv) | eq
        ph = mv | (~(xh | pv) & mask)
        mh = pv & xh
        if ph & high:
            score += 1
        elif mh & high:
            score -= 1
        ph = ((ph << 1) | 1) & mask
        mh = (mh << 1) & mask
        pv = mh | (~(xv | ph) & mask)
        mv = ph & xv
    return score


def _trim_affixes(x: str, y: str) -> tuple[str, str]:
    start = 0
    limit = min(len(x), len(y))
    while start < limit and x[start] == y[start]:
        start += 1
    end = 0
    limit -= start
    while end < limit and x[-1 - end] == y[-1 - end]:
        end += 1
    return x[start:len(x) - end], y[start:len(y) - end]


def levenshtein(x: str, y: str) -> int:
    """Minimum number of insertions, deletions and substitutions turning x into y."""
    if x == y:
        return 0
    x, y = _trim_affixes(x, y)
    if not x:
        return len(y)
    if not y:
        return len(x)
    if len(x) > len(y):
        x, y = y, x
    return _bitparallel(x, y)


def levenshtein_bounded(x: str, y: str, k: int) -> Optional[int]:
    """Return ``levenshtein(x, y)`` if it is at most ``k``, otherwise None.

    Only cells within ``k`` of the main diagonal are evaluated, and the scan
    stops as soon as a whole band row exceeds ``k``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if abs(len(x) - len(y)) > k:
        return None
    if x == y:
        return 0
    x, y = _trim_affixes(x, y)
    m, n = len(x), len(y)
    if m == 0 or n == 0:
        d = m + n
        return d if d <= k else None

    big = k + 1
    prev = [j if j <= k else big for j in range(n + 1)]
    for i in range(1, m + 1):
        lo = max(1, i - k)
        hi = min(n, i + k)
        cur = [big] * (n + 1)
        if i <= k:
            cur[0] = i
        cx = x[i - 1]
        row_min = cur[0] if lo == 1 else big
        for j in range(lo, hi + 1):
            v = prev[j - 1] + (cx != y[j - 1])
            a = prev[j] + 1
            if a < v:
                v = a
            a = cur[j - 1] + 1
            if a < v:
                v = a
            if v > big:
                v = big
            cur[j] = v
            if v < row_min:
                row_min = v
        if row_min > k:
            return None
        prev = cur
    d = prev[n]
    return d if d <= k else None


def substring_distance(pattern: str, text: str) -> int:
    """Smallest edit distance from ``pattern`` to any contiguous piece of ``text``.

    Leading characters of ``text`` are skipped for free (the top row is all
    zeros) and the best cell of the final row is taken, so trailing text is
    free as well.
    """
    prev = [0] * (len(text) + 1)
    for i, cp in enumerate(pattern, 1):
        cur = [i]
        for j, ct in enumerate(text, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (cp != ct)))
        prev = cur
    return min(prev)
