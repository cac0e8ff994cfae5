"""Tabular report emitters. All rounding for display happens here."""
from __future__ import annotations

import csv
import io
from typing import Mapping, Optional, Sequence

from .keywords import KeywordGroup
from .metrics import EntityStats
from .trends import TrendClass

Row = Sequence[object]


def fmt(value, digits: Optional[int] = None) -> str:
    if value is None:
        return ""
    if digits is None:
        return str(value)
    if digits == 0:
        return str(int(round(value)))
    return f"{value:.{digits}f}"


def to_csv(header: Row, rows: Sequence[Row]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)  # RFC 4180: CRLF line ends, minimal quoting
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def to_markdown(header: Row, rows: Sequence[Row]) -> str:
    def cell(v) -> str:
        return str(v).replace("|", "\\|")

    lines = ["| " + " | ".join(cell(h) for h in header) + " |",
             "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(cell(v) for v in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def render(header: Row, rows: Sequence[Row], fmt_name: str) -> str:
    if fmt_name == "csv":
        return to_csv(header, rows)
    if fmt_name == "markdown":
        return to_markdown(header, rows)
    raise ValueError(f"unknown report format {fmt_name!r}")


GROUP_HEADER = ("canonical_label", "occurrences", "mean_pub_year", "mean_citations", "variants")


def group_rows(groups: Sequence[KeywordGroup]) -> list[list[str]]:
    return [
        [g.canonical_label, str(g.occurrences), fmt(g.mean_pub_year, 1), fmt(g.mean_citations, 1),
         "|".join(f"{v}:{n}" for v, n in g.variants.items())]
        for g in groups
    ]


def _pct(part: Optional[int], whole: Optional[int]) -> Optional[float]:
    if part is None or not whole:
        return None
    return 100.0 * part / whole


def entity_table(
    stats: Sequence[EntityStats],
    corpus_size: int,
    trends: Optional[Mapping[str, TrendClass]] = None,
    include_tpgd: bool = False,
) -> tuple[list[str], list[list[str]]]:
    """Header and rows laid out like the country/organization/source tables."""
    is_country = bool(stats) and stats[0].kind == "country"
    header = ["entity", "total_pubs", "pct_of_corpus"]
    if trends is not None:
        header += ["trend", "avg_growth_pct"]
    header += ["h_index", "g_index", "m_index"]
    if include_tpgd:
        header.append("tpgd")
    header += ["avg_citations", "citations_total", "first_pub_year"]
    if is_country:
        header += ["corresponding_pubs", "corresponding_pct", "single_country_pubs", "single_country_pct",
                   "collaborative_pubs", "collaborative_pct"]

    rows = []
    for s in stats:
        row = [s.id, str(s.total_pubs), fmt(s.pct_of_corpus, 1)]
        if trends is not None:
            t = trends.get(s.id, TrendClass(None, None))
            row += [t.glyph, fmt(t.avg_growth_pct, 1)]
        row += [str(s.h), str(s.g), fmt(s.m, 2)]
        if include_tpgd:
            row.append(fmt(s.tpgd, 0))
        row += [fmt(s.avg_citations, 1), str(s.citations_total), str(s.first_pub_year)]
        if is_country:
            row += [fmt(s.corresponding_pubs), fmt(_pct(s.corresponding_pubs, corpus_size), 1),
                    fmt(s.single_country_pubs), fmt(_pct(s.single_country_pubs, s.corresponding_pubs), 1),
                    fmt(s.collaborative_pubs), fmt(_pct(s.collaborative_pubs, s.corresponding_pubs), 1)]
        rows.append(row)
    return header, rows
