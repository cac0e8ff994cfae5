"""Average annual publication growth and its five-level arrow classification."""
from __future__ import annotations

from dataclasses import dataclass
from statistics import fmean
from typing import Iterable, Mapping, Optional

from .corpus import Corpus

DEFAULT_WINDOW = (2015, 2019)
GLYPHS = ("→", "↗", "↑", "↑↑", "↑↑↑")
UNDEFINED_GLYPH = "—"


@dataclass(frozen=True)
class TrendClass:
    avg_growth_pct: Optional[float]
    bucket: Optional[int]

    @property
    def glyph(self) -> str:
        return UNDEFINED_GLYPH if self.bucket is None else GLYPHS[self.bucket]


def annual_counts(docset: Iterable[str], corpus: Corpus, window: tuple[int, int] = DEFAULT_WINDOW) -> dict[int, int]:
    """Documents per publication year over the inclusive window, zero-filled."""
    start, end = window
    counts = {year: 0 for year in range(start, end + 1)}
    index = corpus.by_uid
    for uid in set(docset):
        year = index[uid].pub_year
        if start <= year <= end:
            counts[year] += 1
    return counts


def avg_growth(counts: Mapping[int, int], window: tuple[int, int] = DEFAULT_WINDOW) -> Optional[float]:
    """Mean year-over-year percentage change across the window.

    Years whose predecessor has no publications are skipped; None when no
    year has a usable predecessor.
    """
    start, end = window
    if end <= start:
        raise ValueError(f"window {window} must span at least two years")
    changes = []
    for year in range(start + 1, end + 1):
        base = counts.get(year - 1, 0)
        if base:
            changes.append(100.0 * (counts.get(year, 0) - base) / base)
    return fmean(changes) if changes else None


def bucket_for(avg: float, maximum: float) -> int:
    """Index of the right-closed fifth of [0, maximum] containing ``avg``; negatives map to 0."""
    if maximum <= 0 or avg <= maximum / 5:
        return 0
    for k in range(2, 5):
        if avg <= k * maximum / 5:
            return k - 1
    return 4


def classify(avgs: Mapping[str, Optional[float]]) -> dict[str, TrendClass]:
    """Assign arrow buckets relative to the largest defined average in ``avgs``."""
    defined = [v for v in avgs.values() if v is not None]
    maximum = max(defined) if defined else 0.0
    return {
        entity: TrendClass(avg, None if avg is None else bucket_for(avg, maximum))
        for entity, avg in avgs.items()
    }
