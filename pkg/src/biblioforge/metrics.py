"""Citation indices and per-entity publication statistics.

Entities are authors, countries, organizations or sources. Counting is full:
a document with affiliations in two countries counts once for each.
"""
from __future__ import annotations

import csv
import io
import logging
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from statistics import fmean
from typing import Iterable, Literal, Mapping, NamedTuple, Optional

from .corpus import UNKNOWN_COUNTRY, Corpus, Document, normalize_country

log = logging.getLogger(__name__)

EntityKind = Literal["author", "country", "organization", "source"]
ENTITY_KINDS: tuple[str, ...] = ("author", "country", "organization", "source")


def _check_citations(citations: Iterable[int]) -> list[int]:
    values = list(citations)
    if any(c < 0 for c in values):
        raise ValueError("citation counts must be non-negative")
    return values


def h_index(citations: Iterable[int]) -> int:
    """Largest h such that h papers have at least h citations each."""
    ranked = sorted(_check_citations(citations), reverse=True)
    h = 0
    for rank, c in enumerate(ranked, 1):
        if c < rank:
            break
        h = rank
    return h


def g_index(citations: Iterable[int]) -> int:
    """Largest g such that the g most cited papers have at least g**2 citations together.

    g never exceeds the number of papers (no zero-citation padding).
    """
    ranked = sorted(_check_citations(citations), reverse=True)
    g = 0
    total = 0
    for rank, c in enumerate(ranked, 1):
        total += c
        if total >= rank * rank:
            g = rank
    return g


def m_index(h: int, first_pub_year: int, analysis_year: int) -> float:
    """h divided by the inclusive number of active years."""
    if analysis_year < first_pub_year:
        raise ValueError("analysis_year precedes first_pub_year")
    return h / (analysis_year - first_pub_year + 1)


def document_entities(doc: Document, kind: str) -> frozenset[str]:
    if kind == "author":
        return frozenset(a.key for a in doc.authors if a.key)
    if kind == "country":
        return doc.countries
    if kind == "organization":
        return doc.organizations
    if kind == "source":
        return frozenset({doc.source_title}) if doc.source_title else frozenset()
    raise ValueError(f"unknown entity kind {kind!r}; expected one of {ENTITY_KINDS}")


def entity_documents(corpus: Corpus, kind: str) -> dict[str, set[str]]:
    """Map each entity to the uids of the documents attributed to it."""
    if kind not in ENTITY_KINDS:
        raise ValueError(f"unknown entity kind {kind!r}; expected one of {ENTITY_KINDS}")
    out: dict[str, set[str]] = defaultdict(set)
    for doc in corpus.documents:
        for entity in document_entities(doc, kind):
            out[entity].add(doc.uid)
    return dict(out)


@dataclass(frozen=True)
class GerdSeries:
    """Gross domestic expenditure on R&D per year, in PPP $-billion."""

    country: str
    yearly: Mapping[int, float]

    def __post_init__(self) -> None:
        if not self.yearly:
            raise ValueError(f"{self.country}: empty GERD series")
        if any(v <= 0 for v in self.yearly.values()):
            raise ValueError(f"{self.country}: GERD values must be positive")

    @property
    def mean(self) -> float:
        return fmean(self.yearly.values())


class GerdFormatError(ValueError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def read_gerd_csv(text: str, aliases=None) -> dict[str, GerdSeries]:
    """Parse ``country,year,gerd_ppp_billion`` rows (header optional)."""
    yearly: dict[str, dict[int, float]] = defaultdict(dict)
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
        if not row or not any(c.strip() for c in row):
            continue
        if lineno == 1 and row[0].strip().lower() == "country":
            continue
        if len(row) != 3:
            raise GerdFormatError(f"expected 3 columns, got {len(row)}", lineno)
        try:
            year = int(row[1])
            value = float(row[2])
        except ValueError:
            raise GerdFormatError(f"bad year or value in {row!r}", lineno) from None
        if value <= 0:
            raise GerdFormatError(f"non-positive GERD value {value}", lineno)
        yearly[normalize_country(row[0], aliases)][year] = value
    return {c: GerdSeries(c, dict(v)) for c, v in yearly.items()}


def load_gerd(path: str | Path, aliases=None) -> dict[str, GerdSeries]:
    return read_gerd_csv(Path(path).read_text(encoding="utf-8"), aliases)


class CollaborationShares(NamedTuple):
    corresponding_pubs: int
    single_country: int
    collaborative: int


def reprint_country(doc: Document) -> Optional[str]:
    if doc.reprint is None or doc.reprint.country == UNKNOWN_COUNTRY:
        return None
    return doc.reprint.country


def _doc_country_span(doc: Document) -> frozenset[str]:
    rp = reprint_country(doc)
    return doc.countries | {rp} if rp else doc.countries


def collaboration_shares(corpus: Corpus, country: str) -> CollaborationShares:
    """Split documents whose corresponding author sits in ``country`` into
    single-country and multi-country publications."""
    corresponding = single = 0
    for doc in corpus.documents:
        if reprint_country(doc) != country:
            continue
        corresponding += 1
        if len(_doc_country_span(doc)) == 1:
            single += 1
    return CollaborationShares(corresponding, single, corresponding - single)


def missing_reprint_count(corpus: Corpus) -> int:
    """Documents left out of collaboration shares for lack of a reprint country."""
    return sum(1 for d in corpus.documents if reprint_country(d) is None)


@dataclass(frozen=True)
class EntityStats:
    kind: str
    id: str
    total_pubs: int
    pct_of_corpus: float
    citations_total: int
    avg_citations: float
    h: int
    g: int
    m: float
    first_pub_year: int
    corresponding_pubs: Optional[int] = None
    single_country_pubs: Optional[int] = None
    collaborative_pubs: Optional[int] = None
    tpgd: Optional[float] = None


def entity_stats(
    corpus: Corpus,
    kind: str,
    analysis_year: Optional[int] = None,
    gerd: Optional[Mapping[str, GerdSeries]] = None,
) -> list[EntityStats]:
    """Statistics for every entity of ``kind``, most productive first.

    ``analysis_year`` defaults to the latest publication year in the corpus.
    Collaboration shares are filled for countries; TPGD for countries that
    have a GERD series.
    """
    docsets = entity_documents(corpus, kind)
    if not docsets:
        return []
    index = corpus.by_uid
    if analysis_year is None:
        analysis_year = max(d.pub_year for d in corpus.documents)
    if gerd and kind == "country":
        for name in sorted(set(gerd) - set(docsets)):
            log.warning("GERD series for %r matches no country in the corpus", name)

    shares: dict[str, list[int]] = {}
    if kind == "country":
        shares = {c: [0, 0] for c in docsets}
        for doc in corpus.documents:
            rp = reprint_country(doc)
            if rp is None:
                continue
            row = shares.setdefault(rp, [0, 0])
            row[0] += 1
            if len(_doc_country_span(doc)) == 1:
                row[1] += 1

    out = []
    n_docs = len(corpus.documents)
    for entity, uids in docsets.items():
        docs = [index[u] for u in uids]
        cites = [d.times_cited for d in docs]
        first = min(d.pub_year for d in docs)
        h = h_index(cites)
        total = sum(cites)
        stats = dict(
            kind=kind,
            id=entity,
            total_pubs=len(docs),
            pct_of_corpus=100.0 * len(docs) / n_docs,
            citations_total=total,
            avg_citations=total / len(docs),
            h=h,
            g=g_index(cites),
            m=m_index(h, first, max(analysis_year, first)),
            first_pub_year=first,
        )
        if kind == "country":
            corr, single = shares.get(entity, (0, 0))
            stats.update(corresponding_pubs=corr, single_country_pubs=single,
                         collaborative_pubs=corr - single)
            if gerd and entity in gerd:
                stats["tpgd"] = len(docs) / gerd[entity].mean
        out.append(EntityStats(**stats))
    out.sort(key=lambda s: (-s.total_pubs, s.id))
    return out
